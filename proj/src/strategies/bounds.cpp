#include <bit>
#include <cmath>

#include "mbgame/errors.hpp"
#include "mbgame/strategies.hpp"

namespace mbgame {

BoundReport bound_report(std::int64_t n, const Rational& delta, int b) {
  if (n < 2) throw DomainError("bound_report needs n >= 2");
  if (delta <= 0 || delta >= 1) throw DomainError("bound_report needs 0 < delta < 1");
  if (b < 1) throw DomainError("bound_report needs b >= 1");
  BoundReport r;
  r.n = n;
  r.delta = delta;
  r.b = b;

  const auto un = static_cast<std::uint64_t>(n);
  const long double log2n = std::log2(static_cast<long double>(n));
  if (std::has_single_bit(un) && n < (std::int64_t{1} << 40)) {
    const std::int64_t lg = std::countr_zero(un);
    r.b_max = floor_int(delta * delta * Rational(n) / Rational(6400 * lg * lg));
  } else {
    const long double d = to_double(delta);
    r.b_max = static_cast<std::int64_t>(std::floor(d * d * static_cast<long double>(n) / (6400.0L * log2n * log2n)));
  }

  r.chi_threshold = Rational(32) / delta;
  r.chi_threshold_vertex = Rational(2 * (b + 1)) / delta;

  const long double d = to_double(delta);
  r.dominating_size = static_cast<std::int64_t>(std::ceil(100.0L * std::log(static_cast<long double>(n)) / (d * d)));

  // n * exp(-(delta^2/2) * 100 ln n / delta^2) = n^(1 - (delta^2/2)(100/delta^2)).
  r.failure_exponent = Rational(1) - (delta * delta / 2) * (Rational(100) / (delta * delta));
  r.p1_floor = static_cast<double>(25.0L * log2n);
  return r;
}

}  // namespace mbgame
