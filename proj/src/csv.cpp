#include "cnoidal/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cnoidal/error.hpp"

namespace cnoidal {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorKind::InvalidArgument, "no column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

void write_table(std::ostream& os, const Table& t) {
  for (std::size_t j = 0; j < t.header.size(); ++j) os << (j ? "," : "") << t.header[j];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_double(row[j]);
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::Io, "write failed");
}

Table read_table(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "empty table");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  std::size_t lineNo = 1;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc() || res.ptr != comma) {
        throw Error(ErrorKind::Io, "bad number on line " + std::to_string(lineNo));
      }
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != t.header.size()) {
      throw Error(ErrorKind::Io, "ragged row on line " + std::to_string(lineNo));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

void channel_header(std::vector<std::string>& h) {
  for (const char* name : kChannelNames) {
    h.push_back(std::string(name) + "_re");
    h.push_back(std::string(name) + "_im");
  }
}

void push(std::vector<double>& row, complex z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

void push_channels(std::vector<double>& row, const Amplitudes& C, const Rabi& W) {
  for (complex z : {C.i, C.e, C.f, C.v, W.e, W.f, W.v}) push(row, z);
}

}  // namespace

Table profile_table(const Profile& p, const ResidualReport& residual) {
  Table t;
  t.header.push_back("X");
  channel_header(t.header);
  t.header.push_back("norm");
  t.header.push_back("residual");
  for (std::size_t k = 0; k < p.xs.size(); ++k) {
    const Amplitudes C{p.Ci[k], p.Ce[k], p.Cf[k], p.hasV ? p.Cv[k] : complex{}};
    const Rabi W{p.OmegaE[k], p.OmegaF[k], p.hasV ? p.OmegaV[k] : complex{}};
    std::vector<double> row{p.xs[k]};
    push_channels(row, C, W);
    row.push_back(C.norm());
    row.push_back(k < residual.pointwise.size() ? residual.pointwise[k] : 0.0);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table snapshot_table(const SimHistory& h, const Snapshot& s) {
  Table t;
  t.header.push_back("tau");
  channel_header(t.header);
  t.header.push_back("norm");
  for (std::size_t k = 0; k < h.tau.size(); ++k) {
    std::vector<double> row{h.tau[k]};
    push_channels(row, s.C[k], s.Omega[k]);
    row.push_back(s.C[k].norm());
    t.rows.push_back(std::move(row));
  }
  return t;
}

RoundTrip recertify(const Table& t, const SolutionCoefficients& c) {
  const std::size_t x = t.column("X");
  const std::size_t first = t.column("Ci_re");
  const std::size_t res = t.column("residual");
  const AnsatzEvaluator eval(c);
  RoundTrip rt;
  std::vector<AnsatzPoint> samples;
  samples.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    complex z[7];
    for (int j = 0; j < 7; ++j) z[j] = {row[first + 2 * j], row[first + 2 * j + 1]};
    const Amplitudes C{z[0], z[1], z[2], z[3]};
    rt.probabilityDeviation = std::max(rt.probabilityDeviation, std::abs(C.norm() - 1.0));
    const AnsatzPoint pt = eval(row[x]);
    const complex want[7] = {pt.C.i, pt.C.e, pt.C.f, pt.C.v, pt.Omega.e, pt.Omega.f, pt.Omega.v};
    for (int j = 0; j < 7; ++j) rt.channelMismatch = std::max(rt.channelMismatch, std::abs(z[j] - want[j]));
    samples.push_back(pt);
  }
  const double spacing = t.rows.size() > 1 ? t.rows[1][x] - t.rows[0][x] : 0.0;
  rt.residual = residual_from_samples(samples, c.q, c.Gamma, couplings(c), has_v_level(c.family),
                                      spacing);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    rt.residualMismatch =
        std::max(rt.residualMismatch, std::abs(t.rows[k][res] - rt.residual.pointwise[k]));
  }
  return rt;
}

}  // namespace cnoidal
