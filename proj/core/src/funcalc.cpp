#include "padop/funcalc.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "padop/eig.hpp"
#include "padop/errors.hpp"
#include "padop/ldu.hpp"
#include "padop/roots.hpp"

namespace padop {

MahlerSeries::MahlerSeries(std::uint32_t p, std::vector<PadicScalar> coeffs)
    : p_(p), a_(std::move(coeffs)) {
  for (const PadicScalar& c : a_)
    if (c.prime() != p_)
      fail(errc::prime_mismatch, "Mahler coefficient over the wrong prime");
  if (a_.empty()) a_.push_back(PadicScalar::zero(p_));
}

MahlerSeries MahlerSeries::from_samples(std::uint32_t p,
                                        const std::vector<PadicScalar>& values) {
  if (values.empty()) fail(errc::domain_error, "empty sample table");
  std::vector<PadicScalar> diff = values;
  std::vector<PadicScalar> a;
  a.reserve(values.size());
  a.push_back(diff[0]);
  for (std::size_t k = 1; k < values.size(); ++k) {
    for (std::size_t i = 0; i + k < values.size(); ++i)
      diff[i] = diff[i + 1] - diff[i];
    a.push_back(diff[0]);
  }
  return MahlerSeries(p, std::move(a));
}

ExactPower MahlerSeries::sup_norm() const {
  ExactPower m = ExactPower::zero();
  for (const PadicScalar& c : a_) m = ExactPower::max(m, c.norm());
  return m;
}

ExactPower MahlerSeries::tail_bound(int k_prime) const {
  ExactPower m = ExactPower::zero();
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (static_cast<int>(k) > k_prime) m = ExactPower::max(m, a_[k].norm());
  return m;
}

PadicScalar MahlerSeries::eval_truncated(const PadicScalar& x,
                                         int k_prime) const {
  const int top = std::min(k_prime, order());
  PadicScalar acc = PadicScalar::zero(p_);
  PadicScalar b = PadicScalar::one(p_, kMaxPrecision);  // binom(x, 0)
  for (int k = 0; k <= top; ++k) {
    acc += a_[static_cast<std::size_t>(k)] * b;
    if (k < top)
      // binom(x, k+1) = binom(x, k) (x - k) / (k + 1), exact for integral x
      b = b * (x - PadicScalar::from_integer(p_, k, kMaxPrecision)) /
          PadicScalar::from_integer(p_, k + 1, kMaxPrecision);
  }
  return acc;
}

PadicScalar MahlerSeries::eval(const PadicScalar& x) const {
  return eval_truncated(x, order());
}

PMatrix poly_eval(const PPolynomial& s, const PMatrix& a) {
  if (s.prime() != a.prime())
    fail(errc::prime_mismatch, "polynomial and matrix disagree on the prime");
  return s.eval(a);
}

ExactPower sup_norm_on_ball(const PPolynomial& s,
                            std::int64_t radius_exponent) {
  if (s.degree() < 0) return ExactPower::zero();
  const std::uint32_t p = s.prime();
  // t = p^{-r} u carries |u| <= 1 onto the requested ball
  std::vector<PadicScalar> g;
  for (int k = 0; k <= s.degree(); ++k)
    g.push_back(s.coeff(k).shifted(-radius_exponent * k));
  const PPolynomial gs(p, std::move(g));
  std::vector<PadicScalar> samples;
  for (int i = 0; i <= s.degree(); ++i)
    samples.push_back(gs.eval(PadicScalar::from_integer(p, i, kMaxPrecision)));
  return MahlerSeries::from_samples(p, samples).sup_norm();
}

namespace {

// Smallest m with (C - I)^m = 0, refusing matrices that are not unipotent.
int nilpotency_index(const PMatrix& n) {
  const int sz = n.rows();
  PMatrix pw = PMatrix::identity(n.prime(), sz);
  int m = 0;
  while (!pw.is_zero()) {
    if (m > sz) fail(errc::not_unitriangular, "C - I is not nilpotent");
    pw = pw * n;
    ++m;
  }
  return m;
}

// max_h |N|^h for h = 0..hmax; equals 1 for contractive N.
ExactPower nilpotent_power_bound(const ExactPower& nn, std::int64_t hmax) {
  if (ExactPower::one() < nn && hmax > 0) return nn.pow(hmax);
  return ExactPower::one();
}

PMatrix to_base_matrix(const Mat<ExtScalar>& m) {
  PMatrix r(m.prime(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const ExtScalar& e = m.at(i, j);
      if (!e.in_base_field())
        fail(errc::precision_exhausted,
             "extension components did not cancel at precision");
      r.at(i, j) = e.a();
    }
  return r;
}

PMatrix spectral_diag_apply(const PMatrix& a, const EigDecomposition& dec,
                            const std::vector<PadicScalar>& vals) {
  Mat<ExtScalar> d(a.prime(), a.rows(), a.rows());
  for (int i = 0; i < a.rows(); ++i) d.at(i, i) = ExtScalar::embed(vals[i]);
  return to_base_matrix(dec.Cinv * d * dec.C);
}

std::vector<PadicScalar> base_spectrum(const EigDecomposition& dec) {
  std::vector<PadicScalar> out;
  for (const ExtScalar& l : dec.eigenvalues) {
    if (!l.in_base_field())
      fail(errc::spectrum_not_split,
           "functional calculus needs a base-field spectrum");
    out.push_back(l.a());
  }
  return out;
}

}  // namespace

ExactPower binom_expand_bound(const PMatrix& c, std::int64_t k) {
  if (!c.is_square())
    fail(errc::dimension_mismatch, "unitriangular bound needs a square matrix");
  if (k < 0) fail(errc::domain_error, "negative matrix power");
  const PMatrix n = c - PMatrix::identity(c.prime(), c.rows());
  const int m = nilpotency_index(n);
  const ExactPower bound =
      nilpotent_power_bound(n.norm(), std::min<std::int64_t>(m - 1, k));

  PMatrix acc = PMatrix::identity(c.prime(), c.rows());
  PMatrix base = c;
  for (std::uint64_t e = static_cast<std::uint64_t>(k); e; e >>= 1) {
    if (e & 1) acc = acc * base;
    base = base * base;
  }
  if (bound < acc.norm())
    fail(errc::precision_exhausted, "computed power escapes the binomial bound");
  return bound;
}

PMatrix funcalc_spectral(const MahlerSeries& f, const PMatrix& a) {
  if (f.prime() != a.prime())
    fail(errc::prime_mismatch, "series and matrix disagree on the prime");
  if (ExactPower::one() < a.norm())
    fail(errc::series_diverges, "operator norm exceeds the Mahler domain");
  const EigDecomposition dec = eig_symmetric(a);
  std::vector<PadicScalar> vals;
  for (const PadicScalar& l : base_spectrum(dec)) vals.push_back(f.eval(l));
  const PMatrix r = spectral_diag_apply(a, dec, vals);
  if (f.sup_norm() < r.norm())
    fail(errc::precision_exhausted, "spectral image escapes the Mahler bound");
  return r;
}

PMatrix funcalc_spectral(const PPolynomial& s, const PMatrix& a) {
  if (s.prime() != a.prime())
    fail(errc::prime_mismatch, "polynomial and matrix disagree on the prime");
  if (ExactPower::one() < a.norm())
    fail(errc::series_diverges, "operator norm exceeds the Mahler domain");
  const EigDecomposition dec = eig_symmetric(a);
  std::vector<PadicScalar> vals;
  for (const PadicScalar& l : base_spectrum(dec)) vals.push_back(s.eval(l));
  const PMatrix r = spectral_diag_apply(a, dec, vals);
  ExactPower bound;
  if (a.norm().is_zero())
    bound = s.degree() >= 0 ? s.coeff(0).norm() : ExactPower::zero();
  else
    bound = sup_norm_on_ball(s, a.norm().twice_log() / 2);
  if (bound < r.norm())
    fail(errc::precision_exhausted, "spectral image escapes the sup-norm bound");
  return r;
}

PMatrix funcalc_triangular(const PPolynomial& s, const PMatrix& a) {
  if (s.prime() != a.prime())
    fail(errc::prime_mismatch, "polynomial and matrix disagree on the prime");
  const TriDecomposition d = ldu_decompose(a, /*pivot=*/false);
  const PMatrix sc = s.eval(d.C);
  const PMatrix st = s.eval(d.T);
  const PMatrix se = s.eval(d.E);
  const PMatrix result = sc * st * se;

  // Per-factor bounds: the unipotent factors obey
  // |S(X)| <= max_k |s_k| * max_h |X - I|^h, the diagonal factor the exact
  // sup over its spectrum ball.
  const ExactPower coeffmax = s.coeff_norm();
  const auto unifactor = [&](const PMatrix& x) {
    const PMatrix n = x - PMatrix::identity(x.prime(), x.rows());
    const int m = nilpotency_index(n);
    return coeffmax * nilpotent_power_bound(
                          n.norm(), std::min<std::int64_t>(m - 1, s.degree()));
  };
  ExactPower supt;
  if (d.T.norm().is_zero())
    supt = s.degree() >= 0 ? s.coeff(0).norm() : ExactPower::zero();
  else
    supt = sup_norm_on_ball(s, d.T.norm().twice_log() / 2);
  const ExactPower total = unifactor(d.C) * supt * unifactor(d.E);
  if (total < result.norm())
    fail(errc::precision_exhausted,
         "triangular product escapes its factor bound");
  return result;
}

PadicScalar clamp(const PadicScalar& t) {
  if (t.is_exact_zero()) return t;
  if (!t.certified_nonzero()) {
    // |t| <= p^{-floor}: already inside the unit ball when floor >= 0, and
    // every branch of the shell formula lands in the unit ball otherwise
    if (t.zero_floor() >= 0) return t;
    return PadicScalar::zero_at_precision(t.prime(), 0);
  }
  const std::int64_t v = t.valuation();
  if (v >= 0) return t;
  return t.shifted(-2 * v - 1);  // shell k = -v, scale by p^{2k-1}
}

PMatrix operator_root(const PMatrix& a, int n) {
  if (n <= 0) fail(errc::domain_error, "root order must be positive");
  const std::uint32_t p = a.prime();
  const int sz = a.rows();

  // Scalar multiples of the identity root entrywise; their repeated
  // spectrum needs no diagonalization.
  if (a.is_square() && sz > 0) {
    PMatrix ci(p, sz, sz);
    for (int i = 0; i < sz; ++i) ci.at(i, i) = a.at(0, 0);
    if (PMatrix::dist(a, ci).is_zero()) {
      const PadicScalar rt = padic_nth_root(a.at(0, 0), n);
      PMatrix b(p, sz, sz);
      for (int i = 0; i < sz; ++i) b.at(i, i) = rt;
      return b;
    }
  }

  const EigDecomposition dec = eig_symmetric(a);

  std::vector<PadicScalar> rts;
  for (const ExtScalar& l : dec.eigenvalues) {
    if (!l.in_base_field())
      fail(errc::no_residue_root, "eigenvalue lies outside the base field");
    rts.push_back(padic_nth_root(l.a(), n));
  }
  Mat<ExtScalar> d(p, sz, sz);
  for (int i = 0; i < sz; ++i) d.at(i, i) = ExtScalar::embed(rts[i]);
  const PMatrix b = to_base_matrix(dec.Cinv * d * dec.C);

  PMatrix bn = PMatrix::identity(p, sz);
  for (int i = 0; i < n; ++i) bn = bn * b;
  if (!PMatrix::dist(bn, a).is_zero())
    fail(errc::precision_exhausted,
         "root power does not reproduce the input at precision");

  // Interpolation certificate: q(lambda_i) = root_i forces B = q(A).
  PMatrix vand(p, sz, sz);
  PMatrix rhs(p, sz, 1);
  for (int i = 0; i < sz; ++i) {
    PadicScalar pw = PadicScalar::one(p, kMaxPrecision);
    for (int j = 0; j < sz; ++j) {
      vand.at(i, j) = pw;
      pw = pw * dec.eigenvalues[i].a();
    }
    rhs.at(i, 0) = rts[i];
  }
  const PMatrix q = solve_linear(vand, rhs);
  std::vector<PadicScalar> qc;
  for (int i = 0; i < sz; ++i) qc.push_back(q.at(i, 0));
  if (!PMatrix::dist(PPolynomial(p, std::move(qc)).eval(a), b).is_zero())
    fail(errc::precision_exhausted,
         "root is not certified to be a polynomial in the input");
  return b;
}

}  // namespace padop
