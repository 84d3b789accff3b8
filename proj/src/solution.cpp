#include "cnoidal/solution.hpp"

#include <cmath>
#include <string>

#include "cnoidal/error.hpp"

namespace cnoidal {

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::TwoLevel: return "two-level";
    case Scheme::V: return "v";
    case Scheme::Lambda: return "lambda";
    case Scheme::N: return "n";
  }
  return "unknown";
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::LambdaSuperposed: return "LambdaSuperposed";
    case Family::LambdaSuperposedExchanged: return "LambdaSuperposedExchanged";
    case Family::LambdaP1: return "LambdaP1";
    case Family::LambdaP1Exchanged: return "LambdaP1Exchanged";
    case Family::NSuperposed: return "NSuperposed";
    case Family::NSuperposedExchanged: return "NSuperposedExchanged";
    case Family::NPureCnoidal: return "NPureCnoidal";
    case Family::NPureCnoidalExchanged: return "NPureCnoidalExchanged";
  }
  return "unknown";
}

MediumSpec MediumSpec::two_level(double mu) { return {Scheme::TwoLevel, mu, mu, mu}; }

MediumSpec MediumSpec::v_system(double mu_ev, double mu_f) {
  return {Scheme::V, mu_ev, mu_f, mu_ev};
}

MediumSpec MediumSpec::lambda(double mu_e, double mu_f, std::optional<double> mu) {
  return {Scheme::Lambda, mu_e, mu_f, mu};
}

MediumSpec MediumSpec::n_system(double mu_e, double mu_f, double mu_v) {
  return {Scheme::N, mu_e, mu_f, mu_v};
}

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void MediumSpec::validate() const {
  if (!positive(mu_e) || !positive(mu_f) || (mu_v && !positive(*mu_v))) {
    throw Error(ErrorKind::InvalidArgument, "propagation constants must be finite and > 0");
  }
  switch (scheme) {
    case Scheme::TwoLevel:
      if (!mu_v || mu_e != mu_f || mu_e != *mu_v) {
        throw Error(ErrorKind::SchemeMismatch, "two-level medium needs mu_e = mu_v = mu_f");
      }
      break;
    case Scheme::V:
      if (!mu_v || mu_e != *mu_v) {
        throw Error(ErrorKind::SchemeMismatch, "V medium needs mu_e = mu_v");
      }
      break;
    case Scheme::N:
      if (!mu_v) throw Error(ErrorKind::InvalidArgument, "N medium needs mu_v");
      break;
    case Scheme::Lambda:
      break;
  }
}

double MediumSpec::require_mu_v() const {
  if (!mu_v) throw Error(ErrorKind::InvalidArgument, "mu_v is required for this solution");
  return *mu_v;
}

Layout layout_of(Family f) noexcept {
  switch (f) {
    case Family::LambdaSuperposed:
    case Family::LambdaP1:
    case Family::NSuperposed:
    case Family::NPureCnoidalExchanged:
      return Layout::UpperDn;
    case Family::LambdaSuperposedExchanged:
    case Family::LambdaP1Exchanged:
    case Family::NSuperposedExchanged:
    case Family::NPureCnoidal:
      return Layout::UpperCn;
  }
  return Layout::UpperDn;
}

bool has_v_level(Family f) noexcept {
  switch (f) {
    case Family::NSuperposed:
    case Family::NSuperposedExchanged:
    case Family::NPureCnoidal:
    case Family::NPureCnoidalExchanged:
      return true;
    default:
      return false;
  }
}

bool is_superposed(Family f) noexcept {
  switch (f) {
    case Family::LambdaSuperposed:
    case Family::LambdaSuperposedExchanged:
    case Family::NSuperposed:
    case Family::NSuperposedExchanged:
      return true;
    default:
      return false;
  }
}

CouplingConstants couplings(const SolutionCoefficients& c) {
  CouplingConstants k{c.medium.mu_e, c.medium.mu_f, 0.0};
  if (has_v_level(c.family)) k.v = c.medium.mu_v.value_or(0.0);
  return k;
}

double fundamental_period(const SolutionCoefficients& c) {
  return 4.0 * complete_K(Modulus(c.m)) / c.p;
}

}  // namespace cnoidal
