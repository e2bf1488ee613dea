#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qclone/harness.hpp"

namespace qclone::harness {

namespace {

long long scaled(double x, int decimals) {
  if (!std::isfinite(x)) throw DomainError("cannot round a non-finite value");
  if (decimals < 0 || decimals > 12) throw DomainError("decimals must lie in [0, 12]");
  return std::llround(x * std::pow(10.0, decimals));  // ties away from zero
}

}  // namespace

double round_half_away(double x, int decimals) {
  return static_cast<double>(scaled(x, decimals)) / std::pow(10.0, decimals);
}

std::string format_fixed(double x, int decimals) {
  const long long n = scaled(x, decimals);
  long long unit = 1;
  for (int i = 0; i < decimals; ++i) unit *= 10;
  const long long mag = std::llabs(n);
  char buf[64];
  if (decimals == 0) {
    std::snprintf(buf, sizeof buf, "%s%lld", n < 0 ? "-" : "", mag);
  } else {
    std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", n < 0 ? "-" : "", mag / unit,
                  decimals, mag % unit);
  }
  return buf;
}

}  // namespace qclone::harness
