#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadspin/wigner.hpp"

namespace quadspin {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

bool even(int n) { return (n & 1) == 0; }

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  if (two_j1 < 0 || two_j2 < 0 || two_j < 0) return 0.0;
  if (two_m1 + two_m2 != two_m) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_m) > two_j) return 0.0;
  if (!even(two_j1 + two_m1) || !even(two_j2 + two_m2) || !even(two_j + two_m)) return 0.0;
  if (!even(two_j1 + two_j2 + two_j)) return 0.0;
  if (two_j < std::abs(two_j1 - two_j2) || two_j > two_j1 + two_j2) return 0.0;

  // Integer arguments of the Racah formula.
  const int a = (two_j1 + two_j2 - two_j) / 2;
  const int b = (two_j1 - two_m1) / 2;
  const int c = (two_j2 + two_m2) / 2;
  const int d = (two_j - two_j2 + two_m1) / 2;
  const int e = (two_j - two_j1 - two_m2) / 2;

  cpp_rational prefactor(cpp_int(two_j + 1) * factorial((two_j + two_j1 - two_j2) / 2) *
                             factorial((two_j - two_j1 + two_j2) / 2) * factorial(a),
                         factorial((two_j1 + two_j2 + two_j) / 2 + 1));
  prefactor *= cpp_rational(factorial((two_j + two_m) / 2) * factorial((two_j - two_m) / 2) *
                            factorial(b) * factorial((two_j1 + two_m1) / 2) *
                            factorial((two_j2 - two_m2) / 2) * factorial(c));

  cpp_rational sum = 0;
  const int k_min = std::max({0, -d, -e});
  const int k_max = std::min({a, b, c});
  for (int k = k_min; k <= k_max; ++k) {
    cpp_rational term(cpp_int(1), factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                                      factorial(d + k) * factorial(e + k));
    if (k & 1) sum -= term; else sum += term;
  }
  if (sum == 0) return 0.0;

  const cpp_rational squared = prefactor * sum * sum;
  const long double magnitude = std::sqrt(squared.convert_to<long double>());
  return static_cast<double>(sum < 0 ? -magnitude : magnitude);
}

}  // namespace quadspin
