#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "shannon/cli.hpp"
#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    fail(ErrorCode::Config, field + ": " + what);
}

std::size_t parse_count(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size() || v < 0) throw std::invalid_argument(text);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        config_error(field, "expected a non-negative integer, got '" + text + "'");
    }
}

std::string scalar_text(const toml::node& node, const std::string& field) {
    if (auto s = node.value<std::string>()) return *s;
    if (auto i = node.value<int64_t>()) return std::to_string(*i);
    config_error(field, "expected a string or integer");
}

std::size_t count_field(const toml::node& node, const std::string& field) {
    auto v = node.value<int64_t>();
    if (!v || *v < 0) config_error(field, "expected a non-negative integer");
    return static_cast<std::size_t>(*v);
}

std::vector<std::string> string_list(const toml::node& node, const std::string& field) {
    std::vector<std::string> out;
    if (auto s = node.value<std::string>()) {
        out.push_back(*s);
        return out;
    }
    const toml::array* arr = node.as_array();
    if (!arr) config_error(field, "expected a string or an array of strings");
    for (std::size_t i = 0; i < arr->size(); ++i) {
        auto s = (*arr)[i].value<std::string>();
        if (!s) config_error(field + "[" + std::to_string(i) + "]", "expected a string");
        out.push_back(*s);
    }
    return out;
}

MoveSpec parse_move(const toml::node& node, const std::string& field) {
    const toml::table* t = node.as_table();
    if (!t) config_error(field, "expected a table like {pivot=\"x\", shifts={y=\"1\"}}");
    MoveSpec mv;
    auto pivot = (*t)["pivot"].value<std::string>();
    if (!pivot) config_error(field + ".pivot", "missing or not a string");
    mv.pivot = *pivot;
    if (auto shifts = (*t)["shifts"]; shifts) {
        const toml::table* st = shifts.as_table();
        if (!st) config_error(field + ".shifts", "expected a table of variable = rational");
        for (const auto& [k, v] : *st) {
            mv.shifts.emplace_back(std::string(k.str()), scalar_text(v, field + ".shifts." + std::string(k.str())));
        }
    }
    for (const auto& [k, v] : *t) {
        if (k != "pivot" && k != "shifts") config_error(field + "." + std::string(k.str()), "unknown key");
    }
    return mv;
}

void check_keys(const toml::table& t, const std::string& section, std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : t) {
        bool ok = false;
        for (auto a : allowed) ok = ok || k == a;
        if (!ok) config_error(section + "." + std::string(k.str()), "unknown key");
    }
}

} // namespace

RunConfig parse_config(std::string_view text, const std::string& origin) {
    toml::table doc;
    try {
        doc = toml::parse(text, origin);
    } catch (const toml::parse_error& err) {
        std::ostringstream msg;
        msg << origin << ":" << err.source().begin.line << ":" << err.source().begin.column << ": " << err.description();
        fail(ErrorCode::Config, msg.str());
    }
    RunConfig cfg;
    for (const auto& [k, v] : doc) {
        if (k != "ring" && k != "sequence" && k != "query" && k != "output") config_error(std::string(k.str()), "unknown section");
    }

    if (const toml::table* ring = doc["ring"].as_table()) {
        check_keys(*ring, "ring", {"dim", "vars"});
        if (auto n = (*ring)["dim"].node()) cfg.dim = count_field(*n, "ring.dim");
        if (auto n = (*ring)["vars"].node()) cfg.vars = string_list(*n, "ring.vars");
    }
    if (const toml::table* seq = doc["sequence"].as_table()) {
        check_keys(*seq, "sequence", {"kind", "family", "moves", "sigma", "blocks"});
        if (auto n = (*seq)["kind"].node()) cfg.kind = string_list(*n, "sequence.kind").at(0);
        if (auto n = (*seq)["family"].node()) cfg.kind = string_list(*n, "sequence.family").at(0);
        if (auto n = (*seq)["sigma"].node()) cfg.sigma = scalar_text(*n, "sequence.sigma");
        if (auto n = (*seq)["blocks"].node()) cfg.blocks = count_field(*n, "sequence.blocks");
        if (auto n = (*seq)["moves"].node()) {
            const toml::array* arr = n->as_array();
            if (!arr) config_error("sequence.moves", "expected an array of move tables");
            for (std::size_t i = 0; i < arr->size(); ++i) {
                cfg.moves.push_back(parse_move((*arr)[i], "sequence.moves[" + std::to_string(i) + "]"));
            }
        }
    }
    if (const toml::table* q = doc["query"].as_table()) {
        check_keys(*q, "query", {"elements", "element", "normalizer", "denominator", "uniformizer", "horizon", "window",
                                 "guard", "tolerance", "origin"});
        if (auto n = (*q)["elements"].node()) cfg.elements = string_list(*n, "query.elements");
        if (auto n = (*q)["element"].node()) {
            auto more = string_list(*n, "query.element");
            cfg.elements.insert(cfg.elements.end(), more.begin(), more.end());
        }
        if (auto n = (*q)["normalizer"].node()) cfg.normalizer = scalar_text(*n, "query.normalizer");
        if (auto n = (*q)["denominator"].node()) cfg.denominator = scalar_text(*n, "query.denominator");
        if (auto n = (*q)["uniformizer"].node()) cfg.uniformizer = scalar_text(*n, "query.uniformizer");
        if (auto n = (*q)["horizon"].node()) cfg.params.horizon = count_field(*n, "query.horizon");
        if (auto n = (*q)["window"].node()) cfg.params.window = count_field(*n, "query.window");
        if (auto n = (*q)["origin"].node()) cfg.params.origin = count_field(*n, "query.origin");
        if (auto n = (*q)["guard"].node()) apply_setting(cfg, "guard", scalar_text(*n, "query.guard"));
        if (auto n = (*q)["tolerance"].node()) apply_setting(cfg, "tolerance", scalar_text(*n, "query.tolerance"));
    }
    if (const toml::table* out = doc["output"].as_table()) {
        check_keys(*out, "output", {"format", "csv", "path"});
        if (auto n = (*out)["format"].node()) apply_setting(cfg, "format", scalar_text(*n, "output.format"));
        if (auto n = (*out)["csv"].node()) cfg.csv_path = scalar_text(*n, "output.csv");
        if (auto n = (*out)["path"].node()) cfg.csv_path = scalar_text(*n, "output.path");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Config, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "kind" || key == "family") {
        cfg.kind = value;
    } else if (key == "sigma") {
        cfg.sigma = value;
    } else if (key == "blocks") {
        cfg.blocks = parse_count(key, value);
    } else if (key == "dim") {
        cfg.dim = parse_count(key, value);
    } else if (key == "vars") {
        cfg.vars.clear();
        std::stringstream ss(value);
        for (std::string part; std::getline(ss, part, ',');) {
            auto b = part.find_first_not_of(' ');
            auto e = part.find_last_not_of(' ');
            if (b == std::string::npos) config_error("vars", "empty variable name");
            cfg.vars.push_back(part.substr(b, e - b + 1));
        }
    } else if (key == "element") {
        cfg.elements.push_back(value);
    } else if (key == "normalizer") {
        cfg.normalizer = value;
    } else if (key == "denominator") {
        cfg.denominator = value;
    } else if (key == "uniformizer") {
        cfg.uniformizer = value;
    } else if (key == "horizon") {
        cfg.params.horizon = parse_count(key, value);
    } else if (key == "window") {
        cfg.params.window = parse_count(key, value);
    } else if (key == "origin") {
        cfg.params.origin = parse_count(key, value);
    } else if (key == "guard" || key == "tolerance") {
        Rational r;
        try {
            r = parse_rational(value);
        } catch (const Error&) {
            config_error(key, "expected an integer or fraction, got '" + value + "'");
        }
        if (r <= 0) config_error(key, "must be positive");
        (key == "guard" ? cfg.params.guard : cfg.params.tolerance) = r;
    } else if (key == "format") {
        if (value != "text" && value != "csv") config_error("format", "expected text or csv, got '" + value + "'");
        cfg.format = value;
    } else if (key == "csv") {
        cfg.csv_path = value;
    } else {
        config_error(key, "unknown setting");
    }
}

namespace {

std::size_t family_dimension(const std::string& kind) {
    if (kind == "fibonacci3d" || kind == "cic3d") return 3;
    return 2;
}

std::size_t variable_index(const std::vector<std::string>& vars, const std::string& name, const std::string& field) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) return i;
    }
    config_error(field, "unknown variable '" + name + "'");
}

} // namespace

TransformSequence build_sequence(const RunConfig& cfg) {
    const std::string& kind = cfg.kind;
    const bool listed = kind == "explicit" || kind == "periodic";
    const bool known = listed || kind == "example76" || kind == "example77" || kind == "cic3d" || kind == "fibonacci" ||
                       kind == "directional" || kind == "fibonacci3d";
    if (!known) {
        fail(ErrorCode::UnknownFamily, "sequence.kind: unknown kind '" + kind +
                                           "' (explicit, periodic, example76, example77, cic3d, fibonacci, directional, fibonacci3d)");
    }

    std::size_t dim = cfg.dim.value_or(cfg.vars.empty() ? family_dimension(kind) : cfg.vars.size());
    if (dim < 2) config_error("ring.dim", "must be at least 2");
    if (!listed && dim != family_dimension(kind)) {
        config_error("ring.dim", "kind '" + kind + "' has dimension " + std::to_string(family_dimension(kind)));
    }
    std::vector<std::string> vars = cfg.vars.empty() ? default_variable_names(dim) : cfg.vars;
    if (vars.size() != dim) config_error("ring.vars", "expected " + std::to_string(dim) + " names");

    auto sigma = [&] {
        if (cfg.sigma.empty()) config_error("sequence.sigma", "required for kind '" + kind + "'");
        return QuadraticIrrational::parse(cfg.sigma);
    };

    if (listed) {
        if (cfg.moves.empty()) config_error("sequence.moves", "required for kind '" + kind + "'");
        std::vector<Move> moves;
        for (std::size_t i = 0; i < cfg.moves.size(); ++i) {
            const std::string field = "sequence.moves[" + std::to_string(i) + "]";
            Move mv = Move::plain(dim, variable_index(vars, cfg.moves[i].pivot, field + ".pivot"));
            for (const auto& [name, text] : cfg.moves[i].shifts) {
                std::size_t j = variable_index(vars, name, field + ".shifts");
                if (j == mv.pivot) config_error(field + ".shifts", "the pivot cannot be shifted");
                try {
                    mv.shifts[j] = parse_rational(text);
                } catch (const Error&) {
                    config_error(field + ".shifts." + name, "expected a rational, got '" + text + "'");
                }
            }
            moves.push_back(std::move(mv));
        }
        return kind == "explicit" ? TransformSequence::explicit_list(vars, std::move(moves))
                                  : TransformSequence::periodic(vars, std::move(moves));
    }
    if (kind == "example76") return TransformSequence::explicit_list(vars, example76_block(sigma(), dim).first);
    TransformSequence seq = kind == "example77" ? example77_sequence(sigma())
                          : kind == "cic3d"     ? cic3d_sequence(sigma())
                                                : builtin_family(kind);
    return cfg.vars.empty() ? seq : seq.renamed(vars);
}

} // namespace shannon
