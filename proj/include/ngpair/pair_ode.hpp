#pragma once

// Homogeneous pair-approximation vector fields for the binary Naming Game.
//
// The macrostate is the vector of link-type fractions l. Its time derivative
// (time in units of N interactions) is
//
//     dl/dt = 2 [ D / k + (k - 1) / k * R(l) ] l
//
// where D collects the direct change of the communicating link and R(l) the
// related change of the remaining k - 1 links of every node that switched.
// All functions are templated on the scalar so the same code runs in double
// precision and in exact rational arithmetic.

#include <ngpair/errors.hpp>
#include <ngpair/link_types.hpp>

#include <array>
#include <cmath>
#include <optional>

namespace ngpair {

namespace detail {

// Tables are stored in quarters so every entry is an exact small integer.
template <typename Scalar, int Rows, int Cols>
Matrix<Scalar, Rows, Cols> from_quarters(
    const std::array<std::array<int, Cols>, Rows>& q) {
  Matrix<Scalar, Rows, Cols> m;
  for (int i = 0; i < Rows; ++i)
    for (int j = 0; j < Cols; ++j) m(i, j) = Scalar(q[i][j]) / Scalar(4);
  return m;
}

template <typename Scalar>
Scalar half() {
  return Scalar(1) / Scalar(2);
}
template <typename Scalar>
Scalar quarter() {
  return Scalar(1) / Scalar(4);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Transcribed constant matrices
// ---------------------------------------------------------------------------

/// Direct-change matrix of the symmetric system (rows/cols in sym::Link order).
template <typename Scalar = double>
Matrix<Scalar, 6, 6> direct_matrix6() {
  return detail::from_quarters<Scalar, 6, 6>({{
      {0, 0, 3, 0, 0, 2},
      {0, -4, 0, 0, 0, 0},
      {0, 2, -4, 0, 0, 0},
      {0, 0, 0, 0, 3, 2},
      {0, 2, 0, 0, -4, 0},
      {0, 0, 1, 0, 1, -4},
  }});
}

/// Link correspondence when an A node becomes AB (columns: neighbor A, B, AB).
template <typename Scalar = double>
Matrix<Scalar, 6, 3> correspondence_a6() {
  return detail::from_quarters<Scalar, 6, 3>({{
      {-4, 0, 0},
      {0, -4, 0},
      {4, 0, -4},
      {0, 0, 0},
      {0, 4, 0},
      {0, 0, 4},
  }});
}

/// Link correspondence when a B node becomes AB.
template <typename Scalar = double>
Matrix<Scalar, 6, 3> correspondence_b6() {
  return detail::from_quarters<Scalar, 6, 3>({{
      {0, 0, 0},
      {-4, 0, 0},
      {4, 0, 0},
      {0, -4, 0},
      {0, 4, -4},
      {0, 0, 4},
  }});
}

/// Direct-change matrix of the committed system (com::Link order).
template <typename Scalar = double>
Matrix<Scalar, 9, 9> direct_matrix9() {
  return detail::from_quarters<Scalar, 9, 9>({{
      {0, 0, 3, 0, 0, 0, 0, 0, 0},
      {0, -2, 0, 0, 0, 0, 0, 0, 0},
      {0, 2, -3, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 3, 0, 0, 2},
      {0, 0, 0, 0, -4, 0, 0, 0, 0},
      {0, 0, 0, 0, 2, -4, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 3, 2},
      {0, 0, 0, 0, 2, 0, 0, -4, 0},
      {0, 0, 0, 0, 0, 1, 0, 1, -4},
  }});
}

/// Columns: neighbor C, A, B, AB.
template <typename Scalar = double>
Matrix<Scalar, 9, 4> correspondence_a9() {
  return detail::from_quarters<Scalar, 9, 4>({{
      {-4, 0, 0, 0},
      {0, 0, 0, 0},
      {4, 0, 0, 0},
      {0, -4, 0, 0},
      {0, 0, -4, 0},
      {0, 4, 0, -4},
      {0, 0, 0, 0},
      {0, 0, 4, 0},
      {0, 0, 0, 4},
  }});
}

template <typename Scalar = double>
Matrix<Scalar, 9, 4> correspondence_b9() {
  return detail::from_quarters<Scalar, 9, 4>({{
      {0, 0, 0, 0},
      {-4, 0, 0, 0},
      {4, 0, 0, 0},
      {0, 0, 0, 0},
      {0, -4, 0, 0},
      {0, 4, 0, 0},
      {0, 0, -4, 0},
      {0, 0, 4, -4},
      {0, 0, 0, 4},
  }});
}

// ---------------------------------------------------------------------------
// Effective fields
// ---------------------------------------------------------------------------

/// Conditional neighbor-opinion distributions P(.|A), P(.|B), P(.|AB).
/// A field is empty when no link touches that opinion.
template <typename Scalar, int K>
struct EffectiveFields {
  std::optional<Vector<Scalar, K>> given_a;
  std::optional<Vector<Scalar, K>> given_b;
  std::optional<Vector<Scalar, K>> given_mix;
};

namespace detail {

template <typename Scalar, int K>
std::optional<Vector<Scalar, K>> normalized(const Vector<Scalar, K>& w) {
  const Scalar total = w.sum();
  if (!(total > Scalar(0))) return std::nullopt;
  return Vector<Scalar, K>(w / total);
}

template <typename Scalar, int K>
Vector<Scalar, K> or_zero(const std::optional<Vector<Scalar, K>>& v) {
  return v ? *v : Vector<Scalar, K>::Zero().eval();
}

}  // namespace detail

template <typename Scalar>
EffectiveFields<Scalar, 3> effective_fields6(const Vector6<Scalar>& l) {
  using namespace sym;
  using V = Vector<Scalar, 3>;
  const Scalar two(2);
  EffectiveFields<Scalar, 3> f;
  f.given_a = detail::normalized<Scalar, 3>(V(two * l[AA], l[AB], l[A_AB]));
  f.given_b = detail::normalized<Scalar, 3>(V(l[AB], two * l[BB], l[B_AB]));
  f.given_mix =
      detail::normalized<Scalar, 3>(V(l[A_AB], l[B_AB], two * l[AB_AB]));
  return f;
}

template <typename Scalar>
EffectiveFields<Scalar, 4> effective_fields9(const Vector9<Scalar>& l) {
  using namespace com;
  using V = Vector<Scalar, 4>;
  const Scalar two(2);
  EffectiveFields<Scalar, 4> f;
  f.given_a =
      detail::normalized<Scalar, 4>(V(l[AC], two * l[AA], l[AB], l[A_AB]));
  f.given_b =
      detail::normalized<Scalar, 4>(V(l[BC], l[AB], two * l[BB], l[B_AB]));
  f.given_mix = detail::normalized<Scalar, 4>(
      V(l[ABC], l[A_AB], l[B_AB], two * l[AB_AB]));
  return f;
}

// ---------------------------------------------------------------------------
// Related-change matrices
// ---------------------------------------------------------------------------

template <typename Scalar>
Matrix<Scalar, 6, 6> related_matrix6(const Vector6<Scalar>& l) {
  using namespace sym;
  const auto f = effective_fields6(l);
  const auto pa = detail::or_zero(f.given_a);
  const auto pb = detail::or_zero(f.given_b);
  const auto pm = detail::or_zero(f.given_mix);
  const auto qa = correspondence_a6<Scalar>();
  const auto qb = correspondence_b6<Scalar>();
  const Scalar h = detail::half<Scalar>();
  const Scalar q = detail::quarter<Scalar>();
  const Scalar tq = Scalar(3) * q;

  Matrix<Scalar, 6, 6> r = Matrix<Scalar, 6, 6>::Zero();
  r.col(AB) = h * (qa * pa + qb * pb);
  r.col(A_AB) = qa * (q * pa - tq * pm);
  r.col(B_AB) = qb * (q * pb - tq * pm);
  r.col(AB_AB) = -(qa + qb) * pm;
  return r;
}

template <typename Scalar>
Matrix<Scalar, 9, 9> related_matrix9(const Vector9<Scalar>& l) {
  using namespace com;
  const auto f = effective_fields9(l);
  const auto pa = detail::or_zero(f.given_a);
  const auto pb = detail::or_zero(f.given_b);
  const auto pm = detail::or_zero(f.given_mix);
  const auto qa = correspondence_a9<Scalar>();
  const auto qb = correspondence_b9<Scalar>();
  const Scalar h = detail::half<Scalar>();
  const Scalar q = detail::quarter<Scalar>();
  const Scalar tq = Scalar(3) * q;

  Matrix<Scalar, 9, 9> r = Matrix<Scalar, 9, 9>::Zero();
  r.col(BC) = h * (qb * pb);
  r.col(ABC) = -tq * (qa * pm);
  r.col(AB) = h * (qa * pa + qb * pb);
  r.col(A_AB) = qa * (q * pa - tq * pm);
  r.col(B_AB) = qb * (q * pb - tq * pm);
  r.col(AB_AB) = -(qa + qb) * pm;
  return r;
}

// ---------------------------------------------------------------------------
// Right-hand sides
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
void require_degree(const Scalar& k) {
  if (!(k >= Scalar(1)))
    throw ParameterError("average degree must be >= 1");
}

}  // namespace detail

/// dl/dt of the symmetric (no committed agents) system.
template <typename Scalar>
Vector6<Scalar> rhs6(const Vector6<Scalar>& l, const Scalar& k) {
  detail::require_degree(k);
  const Vector6<Scalar> direct = direct_matrix6<Scalar>() * l;
  const Vector6<Scalar> related = related_matrix6(l) * l;
  return Scalar(2) * (direct / k + ((k - Scalar(1)) / k) * related);
}

/// dl/dt of the committed system. The C-C share does not enter.
template <typename Scalar>
Vector9<Scalar> rhs9(const Vector9<Scalar>& l, const Scalar& k) {
  detail::require_degree(k);
  const Vector9<Scalar> direct = direct_matrix9<Scalar>() * l;
  const Vector9<Scalar> related = related_matrix9(l) * l;
  return Scalar(2) * (direct / k + ((k - Scalar(1)) / k) * related);
}

// ---------------------------------------------------------------------------
// Node fractions and product-measure embedding
// ---------------------------------------------------------------------------

/// Linear map from link fractions to (p_A, p_B, p_AB).
template <typename Scalar>
Matrix<Scalar, 3, 6> node_projection6() {
  using namespace sym;
  Matrix<Scalar, 3, 6> m = Matrix<Scalar, 3, 6>::Zero();
  const Scalar h = detail::half<Scalar>();
  m(kPA, AA) = 1, m(kPA, AB) = h, m(kPA, A_AB) = h;
  m(kPB, AB) = h, m(kPB, BB) = 1, m(kPB, B_AB) = h;
  m(kPAB, A_AB) = h, m(kPAB, B_AB) = h, m(kPAB, AB_AB) = 1;
  return m;
}

/// Committed case: the A row also collects the committed endpoints of C-links
/// (the C-C share is added separately by node_fractions9).
template <typename Scalar>
Matrix<Scalar, 3, 9> node_projection9() {
  using namespace com;
  Matrix<Scalar, 3, 9> m = Matrix<Scalar, 3, 9>::Zero();
  const Scalar h = detail::half<Scalar>();
  m(kPA, AC) = 1, m(kPA, BC) = h, m(kPA, ABC) = h;
  m(kPA, AA) = 1, m(kPA, AB) = h, m(kPA, A_AB) = h;
  m(kPB, BC) = h, m(kPB, AB) = h, m(kPB, BB) = 1, m(kPB, B_AB) = h;
  m(kPAB, ABC) = h, m(kPAB, A_AB) = h, m(kPAB, B_AB) = h, m(kPAB, AB_AB) = 1;
  return m;
}

template <typename Scalar>
Fractions<Scalar> node_fractions6(const Vector6<Scalar>& l) {
  return node_projection6<Scalar>() * l;
}

/// p_A includes the committed mass, cc + (l_AC + l_BC + l_ABC) / 2.
template <typename Scalar>
Fractions<Scalar> node_fractions9(const Vector9<Scalar>& l, const Scalar& cc) {
  Fractions<Scalar> p = node_projection9<Scalar>() * l;
  p[kPA] += cc;
  return p;
}

/// Committed node share implied by a committed link state.
template <typename Scalar>
Scalar committed_share9(const Vector9<Scalar>& l, const Scalar& cc) {
  using namespace com;
  return cc + (l[AC] + l[BC] + l[ABC]) * detail::half<Scalar>();
}

/// Product-measure link state for node fractions p: l_XX = p_X^2 and
/// l_XY = 2 p_X p_Y.
template <typename Scalar>
Vector6<Scalar> embed_product6(const Fractions<Scalar>& p) {
  using namespace sym;
  const Scalar a = p[kPA], b = p[kPB], m = p[kPAB], two(2);
  Vector6<Scalar> l;
  l << a * a, two * a * b, two * a * m, b * b, two * b * m, m * m;
  return l;
}

/// p[kPA] includes the committed fraction c; the susceptible A share is
/// p[kPA] - c.
template <typename Scalar>
std::pair<Vector9<Scalar>, Scalar> embed_product9(const Fractions<Scalar>& p,
                                                   const Scalar& c) {
  const Scalar a = p[kPA] - c, b = p[kPB], m = p[kPAB], two(2);
  if (a < Scalar(0))
    throw ParameterError("p_A is smaller than the committed fraction");
  Vector9<Scalar> l;
  l << two * a * c, two * b * c, two * m * c, a * a, two * a * b,
      two * a * m, b * b, two * b * m, m * m;
  return {l, c * c};
}

inline CommittedLinkState embed_committed(const NodeFractions& p, double c) {
  auto [l, cc] = embed_product9<double>(p, c);
  return {l, cc};
}

/// Infinite-degree dynamics closed over node fractions: the related-change
/// field 2 R(l) l evaluated on the product measure l(p) and projected back to
/// node fractions.
template <typename Scalar>
Fractions<Scalar> rhs_meanfield(const Fractions<Scalar>& p,
                                const Scalar& committed) {
  const Scalar two(2);
  if (committed == Scalar(0)) {
    const Vector6<Scalar> l = embed_product6(p);
    return node_projection6<Scalar>() * (two * (related_matrix6(l) * l));
  }
  const auto [l, cc] = embed_product9(p, committed);
  return node_projection9<Scalar>() * (two * (related_matrix9(l) * l));
}

// ---------------------------------------------------------------------------
// Domain guard
// ---------------------------------------------------------------------------

inline constexpr double kGuardTolerance = 1e-9;

/// Clips entries to [0, 1] and rescales to `mass` when the violation is at
/// most `tol`. Returns false (leaving `x` untouched) on larger violations.
template <int Dim>
bool apply_domain_guard(Vector<double, Dim>& x, double mass,
                        double tol = kGuardTolerance) {
  bool clipped = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < -tol || x[i] > 1.0 + tol) return false;
    if (x[i] < 0.0 || x[i] > 1.0) clipped = true;
  }
  if (std::abs(x.sum() - mass) > tol) return false;
  if (clipped) {
    x = x.cwiseMax(0.0).cwiseMin(1.0);
    const double s = x.sum();
    if (s > 0.0) x *= mass / s;
  }
  return true;
}

}  // namespace ngpair
