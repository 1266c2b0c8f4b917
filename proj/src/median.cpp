#include "dyadic/median.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dyadic {
namespace {

void check_s(double s, double upper, const char* what) {
  if (!(s > 0.0) || s > upper)
    throw validation_error(std::string(what) + " must lie in (0, " +
                           (upper == 1.0 ? "1" : "1/2") + "], got " + std::to_string(s));
}

}  // namespace

std::int64_t median_rank(double s, std::int64_t m) {
  auto k = static_cast<std::int64_t>(std::ceil(s * double(m)));
  if (k < 1) k = 1;
  if (k > m) k = m;
  return k;
}

double kth_largest(std::vector<double>& buf, std::int64_t k) {
  const auto pos = static_cast<std::size_t>(buf.size() - static_cast<std::size_t>(k));
  std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(pos), buf.end());
  return buf[pos];
}

double maximal_median(const StepFunction& f, const DyadicCube& cube, double s) {
  check_s(s, 1.0, "s");
  static thread_local std::vector<double> buf;
  gather_cells(f, cube, buf);
  return kth_largest(buf, median_rank(s, static_cast<std::int64_t>(buf.size())));
}

double median_oscillation(const StepFunction& f, const DyadicCube& cube, double s, double t) {
  check_s(t, 0.5, "t");
  check_s(s, 0.5, "s");
  if (s > t) throw validation_error("median oscillation needs s <= t");
  const double center = maximal_median(f, cube, t);
  static thread_local std::vector<double> buf;
  gather_cells(f, cube, buf);
  for (auto& v : buf) v = std::abs(v - center);
  return kth_largest(buf, median_rank(s, static_cast<std::int64_t>(buf.size())));
}

CenterOscillation min_center_oscillation(const StepFunction& f, const DyadicCube& cube, double s) {
  check_s(s, 0.5, "s");
  static thread_local std::vector<double> buf;
  gather_cells(f, cube, buf);
  std::sort(buf.begin(), buf.end());
  const auto m = static_cast<std::int64_t>(buf.size());
  const std::int64_t q = m - median_rank(s, m) + 1;
  std::int64_t best = 0;
  double best_width = buf[static_cast<std::size_t>(q - 1)] - buf[0];
  for (std::int64_t i = 1; i + q <= m; ++i) {
    const double w = buf[static_cast<std::size_t>(i + q - 1)] - buf[static_cast<std::size_t>(i)];
    if (w < best_width) {
      best_width = w;
      best = i;
    }
  }
  CenterOscillation out;
  out.value = best_width / 2.0;
  out.center = (buf[static_cast<std::size_t>(best)] + buf[static_cast<std::size_t>(best + q - 1)]) / 2.0;
  return out;
}

}  // namespace dyadic
