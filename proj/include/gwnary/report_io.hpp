#pragma once

#include <iosfwd>
#include <string>

#include "gwnary/critical.hpp"
#include "gwnary/mc.hpp"
#include "gwnary/solve.hpp"
#include "gwnary/survival.hpp"

namespace gwnary {

const char* criticality_name(Criticality cls);
Criticality criticality_from_name(const std::string& name);

std::string to_json(const RootReport& report);
std::string to_json(const CriticalReport& report);
std::string to_json(const McEstimate& estimate);
std::string to_json(const SurvivalCurve& curve, const AsymptoteFit& fit);

RootReport root_report_from_json(const std::string& text);
CriticalReport critical_report_from_json(const std::string& text);
McEstimate mc_estimate_from_json(const std::string& text);

/// Columns: t, gamma_t, cond_survival, law_prediction. The law column holds
/// d * a^t for subcritical curves, with a the solved root slope and d the
/// fitted prefactor, and 2/(gamma b t) for critical ones.
void write_curve_csv(std::ostream& out, const SurvivalCurve& curve, const RootReport& root,
                     const AsymptoteFit& fit);

}  // namespace gwnary
