#ifndef NOMASEC_NUMERIC_HPP
#define NOMASEC_NUMERIC_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <stdexcept>

namespace nomasec::numeric {

/// Locates the leftmost point of [lo, hi] where a monotone predicate flips to
/// true. Requires !pred(lo) && pred(hi); the returned point always satisfies
/// pred. Stops once the bracket is narrower than `width`.
template <std::predicate<double> Pred>
double bisect_threshold(Pred&& pred, double lo, double hi, double width,
                        std::size_t max_iterations = 4096) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_threshold: empty bracket");
  for (std::size_t i = 0; i < max_iterations && hi - lo >= width; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

struct MaximumPoint {
  double x;
  double value;
};

/// Golden-section maximization of a unimodal function on [a, b]. Terminates
/// when the bracket is narrower than `tolerance` and returns the best point
/// evaluated.
template <typename Fn>
  requires std::regular_invocable<Fn&, double>
MaximumPoint golden_section_maximize(Fn&& f, double a, double b, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? MaximumPoint{c, fc} : MaximumPoint{d, fd};
}

}  // namespace nomasec::numeric

#endif  // NOMASEC_NUMERIC_HPP
