#include "muntz/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <system_error>

namespace muntz {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return require(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get<T>(j, key);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exponent sequences
// ---------------------------------------------------------------------------

Json to_json(const ExponentSequence& seq) {
    const ExponentRule& r = seq.rule();
    Json j;
    Json params = Json::object();
    switch (r.kind) {
        case ExponentRuleKind::Power:
            j["rule"] = "power";
            params["p"] = r.parameter;
            break;
        case ExponentRuleKind::Geometric:
            j["rule"] = "geometric";
            params["base"] = r.parameter;
            break;
        case ExponentRuleKind::Explicit:
            j["rule"] = "explicit";
            break;
    }
    if (r.kind != ExponentRuleKind::Explicit) {
        params["scale"] = r.scale;
        params["shift"] = r.shift;
        params["terms"] = r.terms;
        if (!r.extra.empty()) params["extra"] = r.extra;
    }
    j["params"] = params;
    j["N"] = seq.size();
    j["exponents"] = seq.exponents();
    return j;
}

ExponentSequence exponent_sequence_from_json(const Json& j) {
    const auto rule = get<std::string>(j, "rule");
    if (rule == "explicit") return ExponentSequence::explicit_list(get<std::vector<double>>(j, "exponents"));
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    ExponentRule r;
    if (rule == "power") {
        r.kind = ExponentRuleKind::Power;
        r.parameter = get<double>(params, "p");
    } else if (rule == "geometric") {
        r.kind = ExponentRuleKind::Geometric;
        r.parameter = get<double>(params, "base");
    } else {
        throw IoError("unknown exponent rule \"" + rule + "\"");
    }
    r.scale = get_or<double>(params, "scale", 1.0);
    r.shift = get_or<double>(params, "shift", 0.0);
    r.extra = get_or<std::vector<double>>(params, "extra", {});
    const auto N = get<std::size_t>(j, "N");
    r.terms = get_or<std::size_t>(params, "terms", N);
    return ExponentSequence::from_rule(r).truncated(N);
}

// ---------------------------------------------------------------------------
// Trigonometric and Müntz polynomials
// ---------------------------------------------------------------------------

Json to_json(const TrigPolynomial& p) {
    Json h = Json::array();
    for (const auto& c : p.harmonics()) h.push_back({c.a, c.b});
    return Json{{"a0", p.a0()}, {"harmonics", h}};
}

TrigPolynomial trig_polynomial_from_json(const Json& j) {
    const auto a0 = get<double>(j, "a0");
    std::vector<Harmonic> hs;
    for (const auto& pair : get<std::vector<std::vector<double>>>(j, "harmonics")) {
        if (pair.size() != 2) throw IoError("harmonic entries must be [a, b]");
        hs.push_back({pair[0], pair[1]});
    }
    return TrigPolynomial(a0, std::move(hs));
}

Json to_json(const MuntzPolynomial& p) {
    Json t = Json::array();
    for (const auto& term : p.terms()) t.push_back({term.exponent, term.coefficient});
    return Json{{"terms", t}};
}

MuntzPolynomial muntz_polynomial_from_json(const Json& j) {
    std::vector<MuntzTerm> terms;
    for (const auto& pair : get<std::vector<std::vector<double>>>(j, "terms")) {
        if (pair.size() != 2) throw IoError("term entries must be [exponent, coefficient]");
        terms.push_back({pair[0], pair[1]});
    }
    return MuntzPolynomial(std::move(terms));
}

// ---------------------------------------------------------------------------
// ψ weights
// ---------------------------------------------------------------------------

Json to_json(const PsiWeight& psi) {
    switch (psi.rule()) {
        case PsiRule::Power:
            return Json{{"rule", "power"}, {"r", psi.r()}, {"beta", psi.beta()}, {"K", psi.K()}, {"scale", psi.scale()}};
        case PsiRule::InverseLog:
            return Json{{"rule", "inverse-log"}, {"beta", psi.beta()}, {"K", psi.K()}};
        case PsiRule::Table: {
            const char* tail = psi.tail() == TableTail::None ? "none" : psi.tail() == TableTail::Zero ? "zero" : "power";
            Json j{{"rule", "table"}, {"values", psi.values()}, {"beta", psi.beta()}, {"tail", tail}};
            if (psi.tail() == TableTail::Power) j["tail_r"] = psi.r();
            return j;
        }
    }
    throw IoError("unknown ψ rule");
}

PsiWeight psi_weight_from_json(const Json& j) {
    const auto rule = get<std::string>(j, "rule");
    const double beta = get_or<double>(j, "beta", 0.0);
    if (rule == "power") {
        return PsiWeight::power(get<double>(j, "r"), beta, get_or<std::size_t>(j, "K", 1024),
                                get_or<double>(j, "scale", 1.0));
    }
    if (rule == "inverse-log") return PsiWeight::inverse_log(beta, get_or<std::size_t>(j, "K", 1024));
    if (rule == "table") {
        const auto tail = get_or<std::string>(j, "tail", "none");
        TableTail t;
        if (tail == "none") {
            t = TableTail::None;
        } else if (tail == "zero") {
            t = TableTail::Zero;
        } else if (tail == "power") {
            t = TableTail::Power;
        } else {
            throw IoError("unknown table tail \"" + tail + "\"");
        }
        return PsiWeight::table(get<std::vector<double>>(j, "values"), beta, t, get_or<double>(j, "tail_r", 0.0));
    }
    throw IoError("unknown ψ rule \"" + rule + "\"");
}

// ---------------------------------------------------------------------------
// Step systems
// ---------------------------------------------------------------------------

Json to_json(const StepSystem& S) {
    Json rows = Json::array();
    for (const auto& r : S.rows) rows.push_back(to_json(r));
    return Json{{"rows", rows}, {"lead", S.lead}, {"high", S.high}};
}

StepSystem step_system_from_json(const Json& j) {
    std::vector<TrigPolynomial> rows;
    for (const auto& r : require(j, "rows")) rows.push_back(trig_polynomial_from_json(r));
    StepSystem S = StepSystem::from_rows(std::move(rows));
    if (j.contains("lead") && get<std::vector<std::size_t>>(j, "lead") != S.lead) {
        throw IoError("stored lead frequencies disagree with the rows");
    }
    if (j.contains("high") && get<std::vector<std::size_t>>(j, "high") != S.high) {
        throw IoError("stored degrees disagree with the rows");
    }
    return S;
}

// ---------------------------------------------------------------------------
// Files and text
// ---------------------------------------------------------------------------

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out << body;
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into " + path.string());
    }
}

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw IoError("CSV row width differs from the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_real(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace muntz
