#include <algorithm>
#include <map>

#include "shannon/error.hpp"
#include "shannon/transform.hpp"

namespace shannon {

void PivotOrderTable::advance(const Move& mv) {
    validate(mv, dimension_);
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        auto& v = exponents_[i];
        Integer total = 0;
        for (const auto& e : v) total += e;
        for (std::size_t j = 0; j < dimension_; ++j) {
            if (j != mv.pivot && mv.shifts[j] != 0) v[j] = 0;
        }
        v[mv.pivot] = total;
        Integer sum = 0;
        for (const auto& e : v) sum += e;
        orders_[i] = sum;
    }
    std::vector<Integer> fresh(dimension_, Integer(0));
    fresh[mv.pivot] = 1;
    exponents_.push_back(std::move(fresh));
    orders_.emplace_back(1);
}

const StageRecord& TrackedElement::at(std::size_t n) const {
    if (n < origin || n - origin >= stages.size()) {
        fail(ErrorCode::Internal, "stage " + std::to_string(n) + " was not tracked");
    }
    return stages[n - origin];
}

TrackedElement track(const Polynomial& a, const TransformSequence& seq, std::size_t origin, std::size_t horizon) {
    if (a.is_zero()) fail(ErrorCode::ZeroElement, "cannot track the zero element");
    if (a.dimension() != seq.dimension()) fail(ErrorCode::DimensionMismatch, "element dimension differs from the ring");
    if (horizon < origin) fail(ErrorCode::Precondition, "horizon precedes the origin stage");

    TrackedElement out;
    out.origin = origin;
    out.element = a;
    out.stages.reserve(horizon - origin + 1);

    const std::size_t d = seq.dimension();
    PivotOrderTable table(d);
    std::vector<Exponent> coefficients;  // ord_i(a_i) for recorded pivots
    Polynomial current = a;
    const Polynomial one = Polynomial::constant(d, Rational(1));

    for (std::size_t n = origin;; ++n) {
        StageRecord rec;
        rec.n = n;
        rec.ord_transform = ord(current).value();
        rec.ord_a = rec.ord_transform;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i] != 0) rec.ord_a += Integer(static_cast<unsigned long>(coefficients[i])) * table.order(i);
        }
        rec.transform = current;
        out.stages.push_back(rec);
        if (n == horizon) break;

        Move mv;
        try {
            mv = seq.move(n);
        } catch (const Error& err) {
            fail(err.code(), std::string(err.what()) + " (tracking stage " + std::to_string(n) + ")");
        }
        table.advance(mv);
        coefficients.push_back(rec.ord_transform);
        if (rec.ord_transform == 0) {
            current = one;
        } else {
            current = exact_divide_by_pivot_power(apply_move(current, mv), mv.pivot, rec.ord_transform);
        }
    }
    return out;
}

namespace {

// Affine form c0 + sum c_k u_k over the unknowns u_1, u_2, ...
using Form = std::map<std::size_t, Rational>;

void add_scaled(Form& target, const Form& source, const Rational& scale) {
    for (const auto& [k, c] : source) {
        auto& slot = target[k];
        slot += scale * c;
        if (slot == 0) target.erase(k);
    }
}

class LinearSystem {
public:
    std::size_t fresh() { return ++unknowns_; }

    Form reduce(Form f) const {
        // eliminated unknowns never appear in stored solutions, so one pass suffices
        for (auto it = f.begin(); it != f.end();) {
            auto sol = solved_.find(it->first);
            if (it->first == 0 || sol == solved_.end()) {
                ++it;
                continue;
            }
            Rational c = it->second;
            it = f.erase(it);
            add_scaled(f, sol->second, c);
            it = f.begin();
        }
        return f;
    }

    /// Adds the constraint f = 0; false when it contradicts earlier ones.
    bool impose(const Form& f) {
        Form r = reduce(f);
        auto lead = std::find_if(r.rbegin(), r.rend(), [](const auto& kv) { return kv.first != 0; });
        if (lead == r.rend()) return r.empty();
        std::size_t k = lead->first;
        Rational c = lead->second;
        Form expr;  // u_k = -(r - c u_k)/c
        for (const auto& [j, cj] : r) {
            if (j != k) expr[j] = -cj / c;
        }
        for (auto& [var, sol] : solved_) {
            auto hit = sol.find(k);
            if (hit == sol.end()) continue;
            Rational s = hit->second;
            sol.erase(hit);
            add_scaled(sol, expr, s);
        }
        solved_[k] = std::move(expr);
        return true;
    }

    std::optional<Rational> value(const Form& f) const {
        Form r = reduce(f);
        for (const auto& [k, c] : r) {
            if (k != 0) return std::nullopt;
        }
        auto it = r.find(0);
        return it == r.end() ? Rational(0) : it->second;
    }

private:
    std::size_t unknowns_ = 0;
    std::map<std::size_t, Form> solved_;
};

Form constant_form(const Rational& c) {
    Form f;
    if (c != 0) f[0] = c;
    return f;
}

Form unknown_form(std::size_t k) { return Form{{k, Rational(1)}}; }

Form difference(const Form& a, const Form& b) {
    Form out = a;
    add_scaled(out, b, Rational(-1));
    return out;
}

} // namespace

PivotValueSolution solve_pivot_values(std::span<const Move> moves, std::size_t dimension) {
    PivotValueSolution out;
    if (moves.empty()) return out;

    LinearSystem system;
    std::vector<Form> forms(dimension);
    for (std::size_t j = 0; j < dimension; ++j) {
        forms[j] = j == moves.front().pivot ? constant_form(Rational(1)) : unknown_form(system.fresh());
    }

    struct Check {
        std::size_t stage;
        Form gap;  // must be positive
    };
    std::vector<Check> checks;
    std::vector<Form> pivot_forms;

    auto flag = [&](std::size_t stage, const std::string& why) {
        if (!out.inconsistent_stage || stage < *out.inconsistent_stage) {
            out.inconsistent_stage = stage;
            out.problem = why;
        }
    };

    for (std::size_t n = 0; n < moves.size(); ++n) {
        const Move& mv = moves[n];
        validate(mv, dimension);
        const Form pivot = forms[mv.pivot];
        pivot_forms.push_back(pivot);
        checks.push_back({n, pivot});
        for (std::size_t j = 0; j < dimension; ++j) {
            if (j == mv.pivot) continue;
            if (mv.shifts[j] == 0) {
                forms[j] = difference(forms[j], pivot);
                checks.push_back({n, forms[j]});
            } else {
                if (!system.impose(difference(forms[j], pivot))) {
                    flag(n, "shift at stage " + std::to_string(n) + " contradicts earlier values");
                }
                forms[j] = unknown_form(system.fresh());
            }
        }
    }

    for (const auto& f : pivot_forms) out.values.push_back(system.value(f));
    for (const auto& c : checks) {
        auto v = system.value(c.gap);
        if (v && *v <= 0) flag(c.stage, "stage " + std::to_string(c.stage) + " produces a parameter of non-positive value");
    }
    return out;
}

} // namespace shannon
