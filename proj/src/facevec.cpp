#include "trimani/facevec.hpp"

#include <string>

namespace trimani {

namespace {

void check_dimension(int d) {
  if (d < 1 || d > kMaxAlgebraDimension) {
    throw Error(Errc::InvalidArgument, "dimension " + std::to_string(d) + " outside 1.." +
                                           std::to_string(kMaxAlgebraDimension));
  }
}

Integer sign(int exponent) { return exponent % 2 == 0 ? Integer(1) : Integer(-1); }

Integer floor_div2(const Integer& x) {
  Integer q = x / 2;
  if (x < 0 && q * 2 != x) q -= 1;
  return q;
}

// ceil((offset + sqrt(x)) / 2) for x >= 0, exact.
Integer ceil_half_offset_sqrt(const Integer& offset, const Integer& x) {
  const Integer r = isqrt(x);
  const Integer sum = offset + r;
  if (r * r == x) {
    // exact root: ceiling of sum / 2
    return floor_div2(sum + 1);
  }
  // sqrt(x) lies strictly between r and r + 1, so the half lies strictly
  // inside (floor(sum/2), floor(sum/2) + 1]
  return floor_div2(sum) + 1;
}

}  // namespace

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

Integer isqrt(const Integer& x) {
  if (x < 0) throw Error(Errc::InvalidArgument, "square root of a negative number");
  Integer r = boost::multiprecision::sqrt(x);
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

FaceVector make_face_vector(int d, std::vector<Integer> f0_to_fd) {
  check_dimension(d);
  if (f0_to_fd.size() != static_cast<std::size_t>(d + 1)) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(d + 1) + " entries f_0..f_d");
  }
  FaceVector f;
  f.d = d;
  f.counts.reserve(f0_to_fd.size() + 1);
  f.counts.emplace_back(1);
  for (auto& x : f0_to_fd) f.counts.push_back(std::move(x));
  return f;
}

FaceVector f_from_pair(const Integer& f0, const Integer& f1) {
  return make_face_vector(3, {f0, f1, 2 * f1 - 2 * f0, f1 - f0});
}

FaceVector f_from_complex(const Complex& k) {
  const auto fv = k.f_vector();
  return make_face_vector(3, {fv[0], fv[1], fv[2], fv[3]});
}

HVector h_vector(const FaceVector& f) {
  const int d = f.d;
  HVector h;
  for (int k = 0; k <= d + 1; ++k) {
    Integer sum = 0;
    for (int i = 0; i <= k; ++i) sum += sign(k - i) * binomial(d + 1 - i, d + 1 - k) * f.f(i - 1);
    h.entries.push_back(sum);
  }
  return h;
}

GVector g_vector(const FaceVector& f) {
  const int d = f.d;
  GVector g;
  for (int k = 0; k <= (d + 1) / 2; ++k) {
    Integer sum = 0;
    for (int i = 0; i <= k; ++i) sum += sign(k - i) * binomial(d + 2 - i, d + 2 - k) * f.f(i - 1);
    g.entries.push_back(sum);
  }
  return g;
}

GVector g_vector(const Complex& k) { return g_vector(f_from_complex(k)); }

SurgeryPrediction predict_surgery(const FaceVector& f, SurgeryOp op, const std::optional<FaceVector>& other) {
  const int d = f.d;
  check_dimension(d);
  std::vector<Integer> out(static_cast<std::size_t>(d + 1));
  switch (op) {
    case SurgeryOp::Subdivide:
      for (int k = 0; k < d; ++k) out[k] = f.f(k) + binomial(d + 1, k);
      out[d] = f.f(d) + d;
      break;
    case SurgeryOp::Handle:
      for (int k = 0; k < d; ++k) out[k] = f.f(k) - binomial(d + 1, k + 1);
      out[d] = f.f(d) - 2;
      break;
    case SurgeryOp::ConnectedSum:
      if (!other) throw Error(Errc::InvalidArgument, "connected sum needs a second operand");
      if (other->d != d) {
        throw Error(Errc::DimensionMismatch,
                    "operands of dimension " + std::to_string(d) + " and " + std::to_string(other->d));
      }
      for (int k = 0; k < d; ++k) out[k] = f.f(k) + other->f(k) - binomial(d + 1, k + 1);
      out[d] = f.f(d) + other->f(d) - 2;
      break;
  }
  SurgeryPrediction p;
  p.f = make_face_vector(d, std::move(out));
  p.g = g_vector(p.f);
  const GVector before = g_vector(f);
  for (std::size_t i = 0; i < p.g.entries.size(); ++i) p.g_delta.push_back(p.g.entries[i] - before.entries[i]);
  return p;
}

Integer g2_lower_bound(int d, const Integer& beta1) {
  if (d < 3) throw Error(Errc::DimensionTooSmall, "the g2 bound needs d >= 3");
  if (beta1 < 0) throw Error(Errc::InvalidArgument, "negative Betti number");
  return binomial(d + 2, 2) * beta1;
}

Integer min_vertices(int d, const Integer& beta1) {
  if (d < 3) throw Error(Errc::DimensionTooSmall, "the vertex bound needs d >= 3");
  if (beta1 < 0) throw Error(Errc::InvalidArgument, "negative Betti number");
  const Integer x = 1 + 4 * Integer(d + 1) * (d + 2) * beta1;
  return ceil_half_offset_sqrt(2 * d + 3, x);
}

Integer heawood_min_vertices(const Integer& chi) {
  if (chi > 2) throw Error(Errc::InvalidEuler, "Euler characteristic above 2");
  return ceil_half_offset_sqrt(7, 49 - 24 * chi);
}

std::vector<TightNeighborlyRow> tight_neighborly_rows(int m_max) {
  if (m_max < 0) throw Error(Errc::InvalidArgument, "m_max must be nonnegative");
  std::vector<TightNeighborlyRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    const Integer mm = m;
    const std::array<TightNeighborlyRow, 4> family{{
        {20 * mm, 20 * mm * mm - 9 * mm + 1},
        {4 + 20 * mm, 20 * mm * mm - mm},
        {5 + 20 * mm, 20 * mm * mm + mm},
        {9 + 20 * mm, 20 * mm * mm + 9 * mm + 1},
    }};
    for (const auto& row : family) {
      if (row.f0 >= 5) rows.push_back(row);
    }
  }
  return rows;
}

Rational mu_statistic(const FaceVector& f) {
  if (f.d != 3) throw Error(Errc::DimensionMismatch, "mu is defined for d = 3");
  return Rational(f.f(1)) - Rational(9, 2) * Rational(f.f(0));
}

bool passes_mu_filter(const FaceVector& f) { return mu_statistic(f) > Rational(1, 2); }

std::vector<std::pair<std::int64_t, std::int64_t>> admissible_pairs(std::int64_t g2_cap) {
  if (g2_cap < 0) throw Error(Errc::InvalidArgument, "g2 cap must be nonnegative");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  // 9/2 f0 + 1/2 < f1 <= g2_cap + 4 f0 - 10 forces f0 < 2 g2_cap - 21
  for (std::int64_t f0 = 1; f0 < 2 * g2_cap; ++f0) {
    const std::int64_t hi = std::min(g2_cap + 4 * f0 - 10, f0 * (f0 - 1) / 2);
    for (std::int64_t f1 = (9 * f0 + 1) / 2 + 1; f1 <= hi; ++f1) {
      if (2 * f1 > 9 * f0 + 1) out.emplace_back(f0, f1);
    }
  }
  return out;
}

}  // namespace trimani
