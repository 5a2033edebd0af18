#pragma once

// Text formats: moment CSV, atom CSV, rule records, verification and
// feasibility reports, curve samples. Numbers are written with 12
// significant digits and a '.' separator regardless of locale.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quadpencil/moments.hpp"
#include "quadpencil/multinode.hpp"
#include "quadpencil/rules.hpp"

namespace quadpencil::io {

/// 12 significant digits by default; significant == 0 gives the shortest text
/// that reads back to the same double.
std::string format_number(double v, int significant = 12);
/// Throws Parse on anything but a complete finite number.
double parse_number(std::string_view text);

/// `k,m_k` per line; `#` comments.
void write_moments(std::ostream& out, const MomentSequence& seq);
/// Rejects gaps, duplicates and out-of-order indices.
MomentSequence read_moments(std::istream& in, const std::string& source);

/// `position,weight` per line; `#` comments.
AtomicMeasure read_atoms(std::istream& in);

void write_rule(std::ostream& out, const QuadratureRule& rule);
QuadratureRule read_rule(std::istream& in);

void write_verification(std::ostream& out, const VerificationReport& report);
void write_feasibility(std::ostream& out, const FeasibilityReport& report);
void write_curve(std::ostream& out, const std::vector<CurveSample>& samples);

}  // namespace quadpencil::io
