#include "gwnary/report_io.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace gwnary {

using nlohmann::json;

const char* criticality_name(Criticality cls) {
    switch (cls) {
        case Criticality::Degenerate: return "degenerate";
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Critical: return "critical";
        case Criticality::Supercritical: return "supercritical";
    }
    return "?";
}

Criticality criticality_from_name(const std::string& name) {
    if (name == "degenerate") return Criticality::Degenerate;
    if (name == "subcritical") return Criticality::Subcritical;
    if (name == "critical") return Criticality::Critical;
    if (name == "supercritical") return Criticality::Supercritical;
    throw std::invalid_argument("unknown criticality class '" + name + "'");
}

std::string to_json(const RootReport& report) {
    json j{{"gamma", report.gamma},
           {"a", report.a},
           {"b", report.b},
           {"class", criticality_name(report.cls)},
           {"bracket", {report.bracket.first, report.bracket.second}},
           {"tol", report.tol},
           {"boundary", report.boundary}};
    return j.dump();
}

RootReport root_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    RootReport report;
    report.gamma = j.at("gamma").get<double>();
    report.a = j.at("a").get<double>();
    report.b = j.at("b").get<double>();
    report.cls = criticality_from_name(j.at("class").get<std::string>());
    report.bracket = {j.at("bracket").at(0).get<double>(), j.at("bracket").at(1).get<double>()};
    report.tol = j.at("tol").get<double>();
    report.boundary = j.at("boundary").get<bool>();
    return report;
}

std::string to_json(const CriticalReport& report) {
    json j{{"param_name", report.param_name},
           {"param_critical", report.param_critical},
           {"mean_critical", report.mean_critical},
           {"gamma_critical", report.gamma_critical},
           {"a_at_critical", report.a_at_critical},
           {"b_at_critical", report.b_at_critical},
           {"tol", report.tol}};
    return j.dump();
}

CriticalReport critical_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    CriticalReport report;
    report.param_name = j.at("param_name").get<std::string>();
    report.param_critical = j.at("param_critical").get<double>();
    report.mean_critical = j.at("mean_critical").get<double>();
    report.gamma_critical = j.at("gamma_critical").get<double>();
    report.a_at_critical = j.at("a_at_critical").get<double>();
    report.b_at_critical = j.at("b_at_critical").get<double>();
    report.tol = j.at("tol").get<double>();
    return report;
}

std::string to_json(const McEstimate& estimate) {
    json j{{"p_hat", estimate.p_hat},
           {"n_trials", estimate.n_trials},
           {"half_width_95", estimate.half_width_95},
           {"budget_exceeded_count", estimate.budget_exceeded_count}};
    return j.dump();
}

McEstimate mc_estimate_from_json(const std::string& text) {
    const json j = json::parse(text);
    McEstimate estimate;
    estimate.p_hat = j.at("p_hat").get<double>();
    estimate.n_trials = j.at("n_trials").get<std::int64_t>();
    estimate.half_width_95 = j.at("half_width_95").get<double>();
    estimate.budget_exceeded_count = j.at("budget_exceeded_count").get<std::int64_t>();
    return estimate;
}

std::string to_json(const SurvivalCurve& curve, const AsymptoteFit& fit) {
    json jf{{"model", fit.model == FitModel::Geometric ? "geometric" : "critical_reciprocal"},
            {"d", fit.d},
            {"rate", fit.rate},
            {"slope", fit.slope},
            {"fitted_constant", fit.fitted_constant},
            {"t_lo", fit.t_lo},
            {"t_hi", fit.t_hi},
            {"max_rel_residual", fit.max_rel_residual}};
    json j{{"N", curve.n},
           {"t_max", curve.t_max},
           {"gamma", curve.gamma},
           {"class", criticality_name(curve.cls)},
           {"fit", jf}};
    return j.dump();
}

void write_curve_csv(std::ostream& out, const SurvivalCurve& curve, const RootReport& root,
                     const AsymptoteFit& fit) {
    out << "t,gamma_t,cond_survival,law_prediction\n";
    const int width = 17;
    out.precision(width);
    for (int t = 0; t <= curve.t_max; ++t) {
        double law;
        if (fit.model == FitModel::Geometric)
            law = fit.d * std::pow(root.a, static_cast<double>(t));
        else
            law = t > 0 ? 2.0 / (curve.gamma * root.b * t) : INFINITY;
        out << t << ',' << curve.gamma_seq[t] << ',' << curve.cond_survival[t] << ',' << law
            << '\n';
    }
}

}  // namespace gwnary
