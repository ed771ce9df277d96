#pragma once

#include <ostream>
#include <string>

#include "chebvar/experiment.hpp"
#include "chebvar/galois.hpp"

namespace chebvar {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double v);

// CSV writers. Fixed column order, '\n' line endings, one header line.

/// x,Q,V,xQlogx,ratio. Throws DomainError on an empty report.
void emit_report(const VarianceReport& report, std::ostream& sink);
/// x,S,S_over_x2,logx,fitted_slope,fitted_intercept.
void emit_thm2(const VarianceReport& report, std::ostream& sink);
/// x,Q,S,main,residual,fitted_c_prime.
void emit_thm2_partial(const VarianceReport& report, std::ostream& sink);
/// q,a,theta,main,error.
void emit_theta(const ThetaTable& table, std::ostream& sink);
/// p,log_p,cycle_type,in_C.
void emit_classification(const FrobeniusTable& table, std::ostream& sink);
/// cycle_type,count,fraction.
void emit_frequencies(const FrobeniusTable& table, std::ostream& sink);

/// Writes `content` to `path`; throws Error if the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace chebvar
