#include "quadpencil/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "quadpencil/error.hpp"

namespace quadpencil::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

double number_at(std::string_view text, std::size_t line_no) {
  try {
    return parse_number(text);
  } catch (const Error& e) {
    parse_error(line_no, e.what());
  }
}

std::size_t index_at(std::string_view text, std::size_t line_no) {
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    parse_error(line_no, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return k;
}

// Calls f(line_no, fields) for every non-blank, non-comment line.
template <typename F>
void for_each_record(std::istream& in, F&& f) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    f(line_no, split(line, ','));
  }
}

}  // namespace

std::string format_number(double v, int significant) {
  if (v == 0.0) v = 0.0;
  std::array<char, 64> buf{};
  const auto res = significant > 0
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, significant)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Parse, "not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

void write_moments(std::ostream& out, const MomentSequence& seq) {
  out << "# source: " << seq.source() << '\n';
  for (std::size_t k = 0; k <= seq.max_degree(); ++k) out << k << ',' << format_number(seq[k]) << '\n';
}

MomentSequence read_moments(std::istream& in, const std::string& source) {
  std::vector<double> values;
  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) parse_error(line_no, "expected 'k,m_k'");
    const std::size_t k = index_at(f[0], line_no);
    if (k < values.size()) parse_error(line_no, "duplicate or out-of-order moment index " + std::to_string(k));
    if (k > values.size()) parse_error(line_no, "missing moment index " + std::to_string(values.size()));
    values.push_back(number_at(f[1], line_no));
  });
  if (values.empty()) throw Error(ErrorKind::Parse, "moment file contains no moments");
  return MomentSequence(std::move(values), source);
}

AtomicMeasure read_atoms(std::istream& in) {
  std::vector<Atom> atoms;
  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) parse_error(line_no, "expected 'position,weight'");
    atoms.push_back(Atom{number_at(f[0], line_no), number_at(f[1], line_no)});
  });
  return AtomicMeasure(std::move(atoms));
}

void write_rule(std::ostream& out, const QuadratureRule& rule) {
  out << "degree," << rule.degree << '\n';
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.nodes[i].is_infinite()) {
      out << "infinity,," << format_number(rule.weights[i]) << '\n';
    } else {
      out << "real," << format_number(rule.nodes[i].value()) << ',' << format_number(rule.weights[i]) << '\n';
    }
  }
  out << "max_residual," << format_number(rule.max_residual) << '\n';
}

QuadratureRule read_rule(std::istream& in) {
  QuadratureRule rule;
  bool have_degree = false;
  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    const std::string_view tag = f[0];
    if (tag == "degree") {
      if (f.size() != 2) parse_error(line_no, "expected 'degree,D'");
      if (have_degree) parse_error(line_no, "repeated degree record");
      rule.degree = index_at(f[1], line_no);
      have_degree = true;
    } else if (tag == "real" || tag == "infinity") {
      if (!have_degree) parse_error(line_no, "node record before the degree record");
      if (f.size() != 3) parse_error(line_no, "expected 3 fields in a node record");
      if (tag == "real") {
        rule.nodes.push_back(Node::real(number_at(f[1], line_no)));
      } else {
        if (!f[1].empty()) parse_error(line_no, "infinity record must leave the value field empty");
        rule.nodes.push_back(Node::infinity());
      }
      rule.weights.push_back(number_at(f[2], line_no));
    } else if (tag == "max_residual") {
      if (f.size() != 2) parse_error(line_no, "expected 'max_residual,r'");
      rule.max_residual = number_at(f[1], line_no);
    } else {
      parse_error(line_no, "unknown record '" + std::string(tag) + "'");
    }
  });
  if (!have_degree) throw Error(ErrorKind::Parse, "rule file has no degree record");
  if (rule.nodes.empty()) throw Error(ErrorKind::Parse, "rule file has no nodes");
  return rule;
}

void write_verification(std::ostream& out, const VerificationReport& report) {
  for (std::size_t k = 0; k < report.residuals.size(); ++k) {
    out << "residual," << k << ',' << format_number(report.residuals[k]) << '\n';
  }
  out << "threshold," << format_number(report.threshold) << '\n';
  out << "max_residual," << format_number(report.max_residual) << '\n';
  out << "status," << (report.pass ? "pass" : "fail") << '\n';
  if (!report.pass) out << "first_failing_degree," << report.first_failing_degree << '\n';
}

void write_feasibility(std::ostream& out, const FeasibilityReport& report) {
  out << "verdict," << to_string(report.verdict) << '\n';
  for (const auto& c : report.candidates) {
    out << "candidate," << format_number(c.x_n) << ',';
    for (std::size_t i = 0; i < c.kernel_nodes.size(); ++i) {
      if (i > 0) out << ';';
      out << (c.kernel_nodes[i].is_infinite() ? "inf" : format_number(c.kernel_nodes[i].value()));
    }
    out << ',' << to_string(c.outcome) << ',' << format_number(c.margin) << '\n';
  }
  for (std::size_t i = 0; i < report.rules_found.size(); ++i) {
    out << "# rule " << i << '\n';
    write_rule(out, report.rules_found[i]);
  }
}

void write_curve(std::ostream& out, const std::vector<CurveSample>& samples) {
  out << "x,y,F,detM,inertia_pos,inertia_neg,inertia_zero\n";
  for (const auto& s : samples) {
    out << format_number(s.x) << ',' << format_number(s.y) << ',' << format_number(s.f) << ','
        << format_number(s.det_linear) << ',' << s.inertia.positive << ',' << s.inertia.negative << ','
        << s.inertia.zero << '\n';
  }
}

}  // namespace quadpencil::io
