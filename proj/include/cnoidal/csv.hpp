#pragma once

// CSV emission and re-reading.  One header row, '.' decimal point, 17
// significant digits so binary64 values survive a round trip.  Complex
// channels are written as <name>_re, <name>_im column pairs.

#include <iosfwd>
#include <string>
#include <vector>

#include "cnoidal/profile.hpp"
#include "cnoidal/propagation.hpp"

namespace cnoidal {

std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws InvalidArgument when absent.
  std::size_t column(const std::string& name) const;
};

void write_table(std::ostream& os, const Table& t);

/// Throws Io on malformed input (ragged rows, unparsable numbers).
Table read_table(std::istream& is);

/// Channel names in column order.
inline constexpr const char* kChannelNames[] = {"Ci",     "Ce",     "Cf",    "Cv",
                                                "OmegaE", "OmegaF", "OmegaV"};

/// X, re/im of every channel, sum |C|^2 and the per-point residual (largest
/// raw residual over the equations).  Channels absent from the scheme are
/// written as zeros.
Table profile_table(const Profile& p, const ResidualReport& residual);

/// tau, re/im of every channel, sum |C|^2.
Table snapshot_table(const SimHistory& h, const Snapshot& s);

struct RoundTrip {
  /// max |sum |C|^2 - 1| recomputed from the stored channels.
  double probabilityDeviation = 0.0;
  /// Residual report recomputed at the stored X values.
  ResidualReport residual;
  /// max difference between stored channels and the ansatz at stored X.
  double channelMismatch = 0.0;
  /// max difference between stored and recomputed per-point residuals.
  double residualMismatch = 0.0;
};

/// Re-certifies a profile table read back from disk against its solution.
RoundTrip recertify(const Table& t, const SolutionCoefficients& c);

}  // namespace cnoidal
