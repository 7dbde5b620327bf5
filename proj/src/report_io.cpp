#include "anwel/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "anwel/errors.hpp"
#include "json.hpp"

namespace anwel {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string join_doubles(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t j = 0; j < v.size(); ++j) {
        if (j) out += ", ";
        out += fmt(v[j]);
    }
    return out + "]";
}

std::string pad(int indent) { return std::string(static_cast<size_t>(indent), ' '); }

void append_count_json(std::string& out, const CountReport& rep, int indent) {
    const std::string p0 = pad(indent), p1 = pad(indent + 2), p2 = pad(indent + 4),
                      p3 = pad(indent + 6);
    out += "{\n";
    out += p1 + "\"stratum\": " + quoted(to_string(rep.stratum)) + ",\n";
    out += p1 + "\"n\": " + fmt(rep.family.n) + ",\n";
    out += p1 + "\"i\": " + fmt(rep.i) + ",\n";
    out += p1 + "\"k\": " + fmt(rep.k) + ",\n";
    out += p1 + "\"form\": " + quoted(to_string(rep.family.form)) + ",\n";
    out += p1 + "\"seed\": " + fmt(rep.seed) + ",\n";
    out += p1 + "\"epsilon\": " + fmt(rep.epsilon) + ",\n";
    out += p1 + "\"complex_count\": " + fmt(rep.complex_count) + ",\n";
    if (rep.real_solutions.empty()) {
        out += p1 + "\"real_solutions\": [],\n";
    } else {
        out += p1 + "\"real_solutions\": [\n";
        for (size_t r = 0; r < rep.real_solutions.size(); ++r) {
            const RealSolutionEntry& e = rep.real_solutions[r];
            out += p2 + "{\n";
            out += p3 + "\"a\": " + join_doubles(e.point.a) + ",\n";
            if (e.inventory.records.empty()) {
                out += p3 + "\"inventory\": [],\n";
            } else {
                out += p3 + "\"inventory\": [\n";
                for (size_t q = 0; q < e.inventory.records.size(); ++q) {
                    const SingularPointRecord& rec = e.inventory.records[q];
                    out += pad(indent + 8) + "{\"x_re\": " + fmt(rec.x_location.real()) +
                           ", \"x_im\": " + fmt(rec.x_location.imag()) +
                           ", \"mult\": " + fmt(rec.multiplicity) +
                           ", \"kind\": " + quoted(to_string(rec.kind)) +
                           ", \"c\": " + fmt(rec.local_coefficient.real()) + "}";
                    out += (q + 1 < e.inventory.records.size()) ? ",\n" : "\n";
                }
                out += p3 + "],\n";
            }
            out += p3 + "\"sign\": " + fmt(e.sign) + "\n";
            out += p2 + "}";
            out += (r + 1 < rep.real_solutions.size()) ? ",\n" : "\n";
        }
        out += p1 + "],\n";
    }
    out += p1 + "\"W\": " + fmt(rep.W) + ",\n";
    out += p1 + "\"expected_multiplicity\": " + fmt(rep.expected_multiplicity) + ",\n";
    out += p1 + "\"resamples\": " + fmt(rep.resamples) + "\n";
    out += p0 + "}";
}

SingKind kind_from_string(const std::string& s) {
    if (s == "hyperbolic_node") return SingKind::HyperbolicNode;
    if (s == "elliptic_node") return SingKind::EllipticNode;
    if (s == "conjugate_node_pair") return SingKind::ConjugateNodePair;
    if (s == "real_cusp") return SingKind::RealCusp;
    if (s == "conjugate_cusp_pair") return SingKind::ConjugateCuspPair;
    if (s == "degenerate") return SingKind::Degenerate;
    throw BadIndices("unknown singularity kind: " + s);
}

RealForm form_from_string(const std::string& s) {
    if (s == "h") return RealForm::H;
    if (s == "e") return RealForm::E;
    if (s == "even") return RealForm::Even;
    throw BadIndices("unknown real form: " + s);
}

std::string sign_str(int sign) { return sign >= 0 ? "+" + fmt(sign) : fmt(sign); }

std::string family_label(const AnFamily& fam) {
    return "A_" + std::to_string(fam.n) + " (form " + to_string(fam.form) + ")";
}

}  // namespace

std::string emit_json(const CountReport& rep) {
    std::string out;
    append_count_json(out, rep, 0);
    out += "\n";
    return out;
}

std::string emit_json(const InvarianceVerdict& v) {
    std::string out = "{\n";
    out += "  \"stratum\": " + quoted(to_string(v.stratum)) + ",\n";
    out += "  \"n\": " + fmt(v.family.n) + ",\n";
    out += "  \"i\": " + fmt(v.i) + ",\n";
    out += "  \"k\": " + fmt(v.k) + ",\n";
    out += "  \"form\": " + quoted(to_string(v.family.form)) + ",\n";
    out += "  \"seed\": " + fmt(v.seed) + ",\n";
    out += "  \"epsilon\": " + fmt(v.epsilon) + ",\n";
    out += "  \"trials\": " + fmt(v.trials) + ",\n";
    out += "  \"W_values\": [";
    for (size_t j = 0; j < v.W_values.size(); ++j) {
        if (j) out += ", ";
        out += fmt(v.W_values[j]);
    }
    out += "],\n";
    out += "  \"invariant\": " + fmt(v.invariant) + ",\n";
    out += "  \"real_count_histogram\": {";
    bool first = true;
    for (const auto& [count, times] : v.real_count_histogram) {
        if (!first) out += ", ";
        first = false;
        out += quoted(fmt(count)) + ": " + fmt(times);
    }
    out += "},\n";
    if (v.offender_trials.empty()) {
        out += "  \"offenders\": []\n";
    } else {
        out += "  \"offenders\": [\n";
        for (size_t j = 0; j < v.offender_trials.size(); ++j) {
            const CountReport& rep = v.offender_reports[j];
            out += "    {\n";
            out += "      \"trial\": " + fmt(v.offender_trials[j]) + ",\n";
            if (rep.stratum == Stratum::Discr) {
                out += "      \"line\": {\"base\": " + join_doubles(rep.line.base) +
                       ", \"direction\": " + join_doubles(rep.line.direction) + "},\n";
            } else {
                out += "      \"slice\": {\"epsilon\": " + fmt(rep.slice.epsilon) +
                       ", \"high\": " + join_doubles(rep.slice.high) + "},\n";
            }
            out += "      \"report\": ";
            append_count_json(out, rep, 6);
            out += "\n    }";
            out += (j + 1 < v.offender_trials.size()) ? ",\n" : "\n";
        }
        out += "  ]\n";
    }
    out += "}\n";
    return out;
}

std::string emit_json(const std::vector<TableRow>& rows) {
    int n_max = 0;
    for (const TableRow& r : rows) n_max = std::max(n_max, r.n);
    std::string out = "{\n";
    out += "  \"n_max\": " + fmt(n_max) + ",\n";
    out += "  \"rows\": [\n";
    for (size_t j = 0; j < rows.size(); ++j) {
        const TableRow& r = rows[j];
        out += "    {\"n\": " + fmt(r.n) + ", \"form\": " + quoted(r.form) +
               ", \"stratum\": " + quoted(r.stratum) +
               ", \"mt_computed\": " + fmt(r.mt_computed) +
               ", \"mt_formula\": " + fmt(r.mt_formula) +
               ", \"W_computed\": " + fmt(r.W_computed) +
               ", \"W_formula\": " + quoted(r.W_formula) +
               ", \"matches\": " + fmt(r.matches) + "}";
        out += (j + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"all_match\": " + fmt(all_rows_match(rows)) + "\n";
    out += "}\n";
    return out;
}

std::string emit_csv(const std::vector<TableRow>& rows) {
    std::string out = "n,form,stratum,mt_computed,mt_formula,W_computed,W_formula\n";
    for (const TableRow& r : rows)
        out += fmt(r.n) + "," + r.form + "," + r.stratum + "," + fmt(r.mt_computed) + "," +
               fmt(r.mt_formula) + "," + fmt(r.W_computed) + "," + r.W_formula + "\n";
    return out;
}

std::string emit_text(const CountReport& rep) {
    std::string out = to_string(rep.stratum) + " count on " + family_label(rep.family);
    if (rep.stratum == Stratum::EG) out += ", i = " + fmt(rep.i);
    if (rep.stratum == Stratum::EC) out += ", k = " + fmt(rep.k);
    out += "\n";
    out += "seed " + fmt(rep.seed) + ", epsilon " + fmt(rep.epsilon) + ", resamples " +
           fmt(rep.resamples) + "\n";
    if (rep.stratum == Stratum::Discr) {
        out += "line base = " + join_doubles(rep.line.base) +
               ", direction = " + join_doubles(rep.line.direction) + "\n";
    } else {
        out += "slice high = " + join_doubles(rep.slice.high) + "\n";
    }
    out += "complex solutions: " + fmt(rep.complex_count) + " (expected multiplicity " +
           fmt(rep.expected_multiplicity) + ")\n";
    out += "real solutions: " + fmt(static_cast<long long>(rep.real_solutions.size())) + "\n";
    for (size_t j = 0; j < rep.real_solutions.size(); ++j) {
        const RealSolutionEntry& e = rep.real_solutions[j];
        out += "  #" + fmt(static_cast<long long>(j)) + ": sign " + sign_str(e.sign) +
               ", a = " + join_doubles(e.point.a) + "\n";
        for (const SingularPointRecord& rec : e.inventory.records) {
            out += "      " + std::string(to_string(rec.kind)) + " at x = " +
                   fmt(rec.x_location.real());
            if (rec.x_location.imag() != 0.0) out += " + " + fmt(rec.x_location.imag()) + "i";
            out += " (mult " + fmt(rec.multiplicity) + ", c = " +
                   fmt(rec.local_coefficient.real()) + ")\n";
        }
    }
    out += "W = " + fmt(rep.W) + "\n";
    return out;
}

std::string emit_text(const InvarianceVerdict& v) {
    std::string out = "invariance experiment: stratum " + to_string(v.stratum) + ", " +
                      family_label(v.family);
    if (v.stratum == Stratum::EG) out += ", i = " + fmt(v.i);
    if (v.stratum == Stratum::EC) out += ", k = " + fmt(v.k);
    out += "\n";
    out += "seed " + fmt(v.seed) + ", epsilon " + fmt(v.epsilon) + ", trials " + fmt(v.trials) +
           "\n";
    if (v.invariant) {
        out += "W values: all equal to " + fmt(v.W_values.front()) + "\n";
    } else {
        out += "W values: [";
        for (size_t j = 0; j < v.W_values.size(); ++j) {
            if (j) out += ", ";
            out += fmt(v.W_values[j]);
        }
        out += "]\n";
    }
    out += "real count histogram:";
    for (const auto& [count, times] : v.real_count_histogram)
        out += " " + fmt(count) + " -> " + fmt(times) + ",";
    if (!v.real_count_histogram.empty()) out.pop_back();
    out += "\n";
    if (v.invariant) {
        out += "verdict: invariant\n";
    } else {
        out += "verdict: NOT invariant; offending trials:";
        for (size_t j = 0; j < v.offender_trials.size(); ++j)
            out += (j ? ", " : " ") + fmt(v.offender_trials[j]);
        out += "\n";
        for (const CountReport& rep : v.offender_reports) {
            if (rep.stratum == Stratum::Discr)
                out += "  line base = " + join_doubles(rep.line.base) +
                       ", direction = " + join_doubles(rep.line.direction) + "\n";
            else
                out += "  slice epsilon = " + fmt(rep.slice.epsilon) +
                       ", high = " + join_doubles(rep.slice.high) + "\n";
        }
    }
    return out;
}

std::string emit_text(const std::vector<TableRow>& rows) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%3s  %-4s  %-7s  %11s  %10s  %10s  %9s\n", "n", "form",
                  "stratum", "mt_computed", "mt_formula", "W_computed", "W_formula");
    out += line;
    int mismatched = 0;
    for (const TableRow& r : rows) {
        std::snprintf(line, sizeof line, "%3d  %-4s  %-7s  %11lld  %10lld  %10lld  %9s%s\n",
                      r.n, r.form.c_str(), r.stratum.c_str(), r.mt_computed, r.mt_formula,
                      r.W_computed, r.W_formula.c_str(), r.matches ? "" : "  MISMATCH");
        out += line;
        if (!r.matches) ++mismatched;
    }
    if (mismatched == 0)
        out += "all " + fmt(static_cast<long long>(rows.size())) +
               " rows match the closed forms\n";
    else
        out += fmt(mismatched) + " of " + fmt(static_cast<long long>(rows.size())) +
               " rows mismatch the closed forms\n";
    return out;
}

bool all_rows_match(const std::vector<TableRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.matches; });
}

CountReport parse_count_report(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);

    CountReport rep;
    rep.stratum = stratum_from_string(j.at("stratum").get<std::string>());
    const int n = j.at("n").get<int>();
    rep.family = AnFamily(n, form_from_string(j.at("form").get<std::string>()));
    rep.i = j.at("i").get<int>();
    rep.k = j.at("k").get<int>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.epsilon = j.at("epsilon").get<double>();
    rep.complex_count = j.at("complex_count").get<long long>();
    rep.W = j.at("W").get<long long>();
    rep.expected_multiplicity = j.at("expected_multiplicity").get<long long>();
    rep.resamples = j.at("resamples").get<int>();

    rep.slice.n = n;
    rep.slice.i = rep.stratum == Stratum::EC ? rep.k + 1 : rep.i;
    rep.slice.epsilon = rep.epsilon;
    rep.line.base.assign(static_cast<size_t>(n), 0.0);
    rep.line.direction.assign(static_cast<size_t>(n), 0.0);

    for (const nlohmann::json& js : j.at("real_solutions")) {
        RealSolutionEntry e;
        e.point = DeformationPoint(rep.family, js.at("a").get<std::vector<double>>());
        for (const nlohmann::json& jr : js.at("inventory")) {
            SingularPointRecord rec;
            rec.x_location = Complex(jr.at("x_re").get<double>(), jr.at("x_im").get<double>());
            rec.multiplicity = jr.at("mult").get<int>();
            rec.kind = kind_from_string(jr.at("kind").get<std::string>());
            rec.local_coefficient = Complex(jr.at("c").get<double>(), 0.0);
            e.inventory.records.push_back(rec);
            const bool pair = rec.kind == SingKind::ConjugateNodePair ||
                              rec.kind == SingKind::ConjugateCuspPair;
            e.inventory.total_delta += (rec.multiplicity / 2) * (pair ? 2 : 1);
            if (rec.kind == SingKind::EllipticNode) ++e.inventory.s;
            if (rec.kind == SingKind::ConjugateCuspPair) ++e.inventory.ic;
            if (rec.kind == SingKind::Degenerate) e.inventory.has_degenerate = true;
        }
        e.sign = js.at("sign").get<int>();
        rep.real_solutions.push_back(std::move(e));
    }
    return rep;
}

}  // namespace anwel
