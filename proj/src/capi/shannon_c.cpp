#include "shannon/shannon.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "shannon/cli.hpp"
#include "shannon/error.hpp"

struct shn_session {
    shannon::RunConfig config;
};

struct shn_report {
    shannon::Report report;
    std::string csv_path;
    bool csv_stdout = false;
};

namespace {

thread_local std::string last_error;

shn_status status_of(shannon::ErrorCode code) {
    using shannon::ErrorCode;
    switch (code) {
    case ErrorCode::Parse: return SHN_ERR_PARSE;
    case ErrorCode::DimensionMismatch: return SHN_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotDivisible: return SHN_ERR_NOT_DIVISIBLE;
    case ErrorCode::ZeroElement: return SHN_ERR_ZERO_ELEMENT;
    case ErrorCode::SequenceExhausted: return SHN_ERR_SEQUENCE_EXHAUSTED;
    case ErrorCode::NotStabilized: return SHN_ERR_NOT_STABILIZED;
    case ErrorCode::InvalidNormalizer: return SHN_ERR_INVALID_NORMALIZER;
    case ErrorCode::NonArchimedeanSequence: return SHN_ERR_NON_ARCHIMEDEAN_SEQUENCE;
    case ErrorCode::ArchimedeanSequence: return SHN_ERR_ARCHIMEDEAN_SEQUENCE;
    case ErrorCode::BadUniformizer: return SHN_ERR_BAD_UNIFORMIZER;
    case ErrorCode::UndecidedEquality: return SHN_ERR_UNDECIDED_EQUALITY;
    case ErrorCode::SigmaOutOfRange: return SHN_ERR_SIGMA_OUT_OF_RANGE;
    case ErrorCode::UnknownFamily: return SHN_ERR_UNKNOWN_FAMILY;
    case ErrorCode::Config: return SHN_ERR_CONFIG;
    case ErrorCode::Precondition: return SHN_ERR_PRECONDITION;
    case ErrorCode::Overflow: return SHN_ERR_OVERFLOW;
    case ErrorCode::ExpressionSwell: return SHN_ERR_EXPRESSION_SWELL;
    case ErrorCode::DomainMismatch: return SHN_ERR_DOMAIN_MISMATCH;
    case ErrorCode::Internal: return SHN_ERR_INTERNAL;
    }
    return SHN_ERR_INTERNAL;
}

shn_status invalid(const char* what) {
    last_error = what;
    return SHN_ERR_INVALID_ARGUMENT;
}

// Runs f, translating exceptions into status codes.
template <class F>
shn_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return SHN_OK;
    } catch (const shannon::Error& err) {
        last_error = std::string(shannon::to_string(err.code())) + ": " + err.what();
        return status_of(err.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SHN_ERR_INTERNAL;
    } catch (const std::exception& err) {
        last_error = std::string("internal: ") + err.what();
        return SHN_ERR_INTERNAL;
    } catch (...) {
        last_error = "internal: unknown exception";
        return SHN_ERR_INTERNAL;
    }
}

struct Query {
    shannon::TransformSequence seq;
    shannon::Analyzer analyzer;
};

Query query_of(const shn_session* s) {
    auto seq = shannon::build_sequence(s->config);
    shannon::Polynomial x = s->config.normalizer.empty()
                                ? shannon::Polynomial::variable(seq.dimension(), 0)
                                : shannon::parse_polynomial(s->config.normalizer, seq.variables());
    return {seq, shannon::Analyzer(seq, x, s->config.params)};
}

} // namespace

extern "C" {

const char* shn_version(void) { return "0.1.0"; }

const char* shn_status_name(shn_status status) {
    switch (status) {
    case SHN_OK: return "ok";
    case SHN_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    default: break;
    }
    for (int c = 0; c <= static_cast<int>(shannon::ErrorCode::Internal); ++c) {
        auto code = static_cast<shannon::ErrorCode>(c);
        if (status_of(code) == status) return shannon::to_string(code);
    }
    return "unknown";
}

const char* shn_last_error(void) { return last_error.c_str(); }

shn_status shn_session_create(shn_session** out) {
    if (!out) return invalid("null output pointer");
    *out = nullptr;
    return guarded([&] { *out = new shn_session(); });
}

void shn_session_free(shn_session* session) { delete session; }

shn_status shn_session_load_config(shn_session* session, const char* path) {
    if (!session || !path) return invalid("null argument");
    return guarded([&] { session->config = shannon::load_config_file(path); });
}

shn_status shn_session_load_config_string(shn_session* session, const char* text) {
    if (!session || !text) return invalid("null argument");
    return guarded([&] { session->config = shannon::parse_config(text, "config"); });
}

shn_status shn_session_set(shn_session* session, const char* key, const char* value) {
    if (!session || !key || !value) return invalid("null argument");
    return guarded([&] { shannon::apply_setting(session->config, key, value); });
}

shn_status shn_session_clear_elements(shn_session* session) {
    if (!session) return invalid("null session");
    session->config.elements.clear();
    last_error.clear();
    return SHN_OK;
}

shn_status shn_session_run(const shn_session* session, const char* command, shn_report** report) {
    if (!report) return invalid("null report pointer");
    *report = nullptr;
    if (!session || !command) return invalid("null argument");
    return guarded([&] {
        auto r = std::make_unique<shn_report>();
        r->report = shannon::run(session->config, command);
        r->csv_path = session->config.csv_path;
        r->csv_stdout = session->config.format == "csv";
        *report = r.release();
    });
}

int shn_report_exit_code(const shn_report* report) { return report ? report->report.exit_code : 1; }
const char* shn_report_text(const shn_report* report) { return report ? report->report.text.c_str() : ""; }
const char* shn_report_csv(const shn_report* report) { return report ? report->report.csv.c_str() : ""; }

const char* shn_report_csv_path(const shn_report* report) {
    return report && !report->csv_path.empty() ? report->csv_path.c_str() : nullptr;
}

int shn_report_wants_csv_stdout(const shn_report* report) { return report && report->csv_stdout ? 1 : 0; }

void shn_report_free(shn_report* report) { delete report; }

shn_status shn_polynomial_order(const shn_session* session, const char* element, long long* order) {
    if (!session || !element || !order) return invalid("null argument");
    return guarded([&] {
        auto seq = shannon::build_sequence(session->config);
        auto o = shannon::ord(shannon::parse_polynomial(element, seq.variables()));
        if (o.is_infinite()) shannon::fail(shannon::ErrorCode::ZeroElement, "the zero polynomial has no order");
        *order = static_cast<long long>(o.value());
    });
}

shn_status shn_e_value(const shn_session* session, const char* element, long long* value, int* certified) {
    if (!session || !element || !value) return invalid("null argument");
    return guarded([&] {
        Query q = query_of(session);
        auto e = q.analyzer.e_value(shannon::parse_polynomial(element, q.seq.variables()));
        if (!e.value.fits_slong_p()) shannon::fail(shannon::ErrorCode::Overflow, "e does not fit in 64 bits");
        *value = e.value.get_si();
        if (certified) *certified = e.certified() ? 1 : 0;
    });
}

shn_status shn_classify(const shn_session* session, shn_verdict* verdict, int* certified) {
    if (!session || !verdict) return invalid("null argument");
    return guarded([&] {
        auto c = query_of(session).analyzer.classify();
        *verdict = c.verdict == shannon::Verdict::Archimedean      ? SHN_ARCHIMEDEAN
                 : c.verdict == shannon::Verdict::NonArchimedean ? SHN_NON_ARCHIMEDEAN
                                                                  : SHN_UNDECIDED;
        if (certified) *certified = c.certified ? 1 : 0;
    });
}

shn_status shn_tau_enclosure(const shn_session* session, double* lo, double* hi, int* infinite) {
    if (!session || !lo || !hi) return invalid("null argument");
    return guarded([&] {
        auto t = query_of(session).analyzer.tau();
        if (infinite) *infinite = t.is_infinite() ? 1 : 0;
        if (t.is_infinite()) {
            *lo = *hi = t.kind == shannon::ValueKind::PlusInfinity ? HUGE_VAL : -HUGE_VAL;
        } else {
            *lo = t.lo.get_d();
            *hi = t.hi.get_d();
        }
    });
}

shn_status shn_w_value(const shn_session* session, const char* element, char** text, int* certified) {
    if (!session || !element || !text) return invalid("null argument");
    *text = nullptr;
    return guarded([&] {
        Query q = query_of(session);
        auto a = shannon::parse_polynomial(element, q.seq.variables());
        auto c = q.analyzer.classify();
        auto w = c.verdict == shannon::Verdict::NonArchimedean ? q.analyzer.w_ratio(a) : q.analyzer.w_series(a);
        std::string s = w.to_string();
        char* out = static_cast<char*>(std::malloc(s.size() + 1));
        if (!out) throw std::bad_alloc();
        std::memcpy(out, s.c_str(), s.size() + 1);
        *text = out;
        if (certified) *certified = w.certified ? 1 : 0;
    });
}

void shn_string_free(char* text) { std::free(text); }

} // extern "C"
