#include "padop/eig.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "padop/errors.hpp"
#include "padop/ldu.hpp"
#include "padop/roots.hpp"

namespace padop {

namespace {

// ---- residue-field arithmetic -------------------------------------------

std::uint32_t eval_mod_p(const std::vector<std::uint32_t>& cs, std::uint32_t x,
                         std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t t = cs.size(); t-- > 0;) acc = (acc * x + cs[t]) % p;
  return static_cast<std::uint32_t>(acc);
}

// Element x + y*sqrt(u) of F_{p^2}, u a fixed non-residue.
struct F2 {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};

F2 f2_mul(const F2& a, const F2& b, std::uint32_t p, std::uint32_t u) {
  const std::uint64_t xx = static_cast<std::uint64_t>(a.x) * b.x % p;
  const std::uint64_t yy = static_cast<std::uint64_t>(a.y) * b.y % p;
  const std::uint64_t xy =
      (static_cast<std::uint64_t>(a.x) * b.y + static_cast<std::uint64_t>(a.y) * b.x) % p;
  return {static_cast<std::uint32_t>((xx + yy * u) % p),
          static_cast<std::uint32_t>(xy)};
}

F2 eval_f2(const std::vector<std::uint32_t>& cs, const F2& z, std::uint32_t p,
           std::uint32_t u) {
  F2 acc;
  for (std::size_t t = cs.size(); t-- > 0;) {
    acc = f2_mul(acc, z, p, u);
    acc.x = static_cast<std::uint32_t>((acc.x + cs[t]) % p);
  }
  return acc;
}

bool f2_is_zero(const F2& z) { return z.x == 0 && z.y == 0; }

// ---- Hensel lifting -------------------------------------------------------

// Newton iteration from a candidate start.  Success means f(x) became
// indistinguishable from zero; a step that fails to shrink |f(x)| strictly
// marks the start as outside every basin of attraction.
template <typename X>
std::optional<X> newton_converge(const PPolynomial& f, const PPolynomial& fd,
                                 X x) {
  try {
    ExactPower prev = ExactPower::zero();
    for (int it = 0; it < 100; ++it) {
      const X fx = f.eval(x);
      if (fx.is_zero()) return x;
      const ExactPower cur = fx.norm();
      if (it > 0 && !(cur < prev)) return std::nullopt;
      prev = cur;
      const X dfx = fd.eval(x);
      if (!dfx.certified_nonzero()) return std::nullopt;
      x = x - fx / dfx;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

int scalar_cmp(const PadicScalar& x, const PadicScalar& y) {
  const bool zx = x.is_zero();
  const bool zy = y.is_zero();
  if (zx != zy) return zx ? -1 : 1;
  if (zx) return 0;
  if (x.valuation() != y.valuation())
    return x.valuation() < y.valuation() ? -1 : 1;
  const std::vector<std::uint32_t> dx = x.digits();
  const std::vector<std::uint32_t> dy = y.digits();
  const std::size_t m = std::min(dx.size(), dy.size());
  for (std::size_t i = 0; i < m; ++i)
    if (dx[i] != dy[i]) return dx[i] < dy[i] ? -1 : 1;
  if (dx.size() != dy.size()) return dx.size() < dy.size() ? -1 : 1;
  return 0;
}

}  // namespace

bool canonical_less(const ExtScalar& x, const ExtScalar& y) {
  const ExactPower nx = x.norm();
  const ExactPower ny = y.norm();
  if (nx != ny) return ny < nx;  // larger magnitude first, zero last
  if (x.quad_class() != y.quad_class())
    return static_cast<int>(x.quad_class()) < static_cast<int>(y.quad_class());
  if (const int c = scalar_cmp(x.a(), y.a())) return c < 0;
  return scalar_cmp(x.b(), y.b()) < 0;
}

std::vector<CharRoot> char_roots(const PMatrix& a) {
  if (!a.is_square())
    fail(errc::dimension_mismatch, "char_roots needs a square matrix");
  const std::uint32_t p = a.prime();
  const int n = a.rows();
  const PPolynomial f = charpoly(a);
  const PPolynomial fd = f.derivative();
  const std::vector<PadicScalar>& c = f.coeffs();  // ascending, monic

  int k0 = 0;
  while (k0 < n && c[k0].is_exact_zero()) ++k0;

  std::vector<CharRoot> out;
  if (k0 > 0) out.push_back({ExtScalar::zero(p), k0});
  if (k0 == n) return out;
  if (!c[k0].certified_nonzero())
    fail(errc::precision_exhausted,
         "lowest characteristic coefficient is below precision but not exactly zero");

  // Lower Newton polygon over the certified support, vertices only.
  std::vector<std::pair<int, std::int64_t>> hull;
  for (int k = k0; k <= n; ++k) {
    if (!c[k].certified_nonzero()) continue;
    const std::pair<int, std::int64_t> pt{k, c[k].valuation()};
    while (hull.size() >= 2) {
      const auto& A = hull[hull.size() - 2];
      const auto& B = hull.back();
      const std::int64_t cross =
          static_cast<std::int64_t>(B.first - A.first) * (pt.second - A.second) -
          (B.second - A.second) * static_cast<std::int64_t>(pt.first - A.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }

  // A coefficient known only as zero-at-precision is harmless when its floor
  // lies strictly above the polygon; on or below, the root valuations are not
  // determined by what we can see.
  for (int k = k0 + 1; k < n; ++k) {
    if (c[k].is_exact_zero() || c[k].certified_nonzero()) continue;
    const std::int64_t fl = c[k].zero_floor();
    bool clears = false;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const int ka = hull[s].first;
      const int kb = hull[s + 1].first;
      if (k < ka || k > kb) continue;
      const std::int64_t va = hull[s].second;
      const std::int64_t vb = hull[s + 1].second;
      clears = fl * (kb - ka) > va * (kb - ka) + (vb - va) * (k - ka);
      break;
    }
    if (!clears)
      fail(errc::precision_exhausted,
           "characteristic coefficient is uncertified at the Newton polygon");
  }

  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int ki = hull[s].first;
    const std::int64_t vi = hull[s].second;
    const int kj = hull[s + 1].first;
    const std::int64_t vj = hull[s + 1].second;
    const int w = kj - ki;
    const std::int64_t h = vi - vj;  // roots of this segment have valuation h/w
    const std::int64_t g = std::gcd(h < 0 ? -h : h, static_cast<std::int64_t>(w));
    const std::int64_t den = w / g;  // gcd(0, w) = w, so g >= 1
    const std::int64_t num = h / g;

    if (den == 1) {
      const std::int64_t m = num;
      // Residue polynomial of the segment: unit digits where the support
      // touches the polygon, zero elsewhere.
      std::vector<std::uint32_t> rp(w + 1, 0);
      for (int k = ki; k <= kj; ++k) {
        if (!c[k].certified_nonzero()) continue;
        if ((c[k].valuation() - vi) + m * (k - ki) == 0)
          rp[k - ki] = c[k].leading_digit();
      }
      std::vector<std::uint32_t> rpd(w, 0);
      for (int t = 1; t <= w; ++t)
        rpd[t - 1] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(rp[t]) * static_cast<std::uint32_t>(t) % p);

      int found = 0;
      for (std::uint32_t t = 1; t < p; ++t) {
        if (eval_mod_p(rp, t, p) != 0) continue;
        if (eval_mod_p(rpd, t, p) == 0)
          fail(errc::repeated_residue_roots,
               "residue spectrum is not squarefree");
        const PadicScalar x0 =
            PadicScalar::from_integer(p, t, kMaxPrecision).shifted(m);
        const auto r = newton_converge(f, fd, x0);
        if (!r)
          fail(errc::precision_exhausted,
               "lift from a simple residue root did not converge");
        out.push_back({ExtScalar::embed(*r), 1});
        ++found;
      }
      if (found < w) {
        const std::uint32_t u = least_nonresidue(p);
        for (std::uint32_t xa = 0; xa < p; ++xa) {
          for (std::uint32_t xb = 1; xb < p; ++xb) {
            const F2 z{xa, xb};
            if (!f2_is_zero(eval_f2(rp, z, p, u))) continue;
            if (f2_is_zero(eval_f2(rpd, z, p, u)))
              fail(errc::repeated_residue_roots,
                   "residue spectrum is not squarefree over the quadratic residue field");
            const ExtScalar x0 = ExtScalar::from_parts(
                QuadClass::kU,
                PadicScalar::from_integer(p, xa, kMaxPrecision).shifted(m),
                PadicScalar::from_integer(p, xb, kMaxPrecision).shifted(m));
            const auto r = newton_converge(f, fd, x0);
            if (!r)
              fail(errc::precision_exhausted,
                   "lift from a simple residue root did not converge");
            out.push_back({*r, 1});
            ++found;
          }
        }
      }
      if (found != w)
        fail(errc::spectrum_not_split,
             "characteristic roots escape the supported quadratic extensions");
    } else if (den == 2) {
      // Ramified segment: roots of half-integral valuation num/2, reached
      // from starts t * sqrt(d) * p^((num-1)/2) over both ramified classes.
      const std::int64_t shift = (num - 1) / 2;
      std::vector<ExtScalar> seg;
      for (const QuadClass d : {QuadClass::kP, QuadClass::kPU}) {
        for (std::uint32_t t = 1; t < p; ++t) {
          const ExtScalar x0 = ExtScalar::from_parts(
              d, PadicScalar::zero(p),
              PadicScalar::from_integer(p, t, kMaxPrecision).shifted(shift));
          const auto r = newton_converge(f, fd, x0);
          if (!r) continue;
          if (r->norm().twice_log() != -num) continue;  // drifted to another segment
          bool dup = false;
          for (const ExtScalar& q : seg) {
            if (q.quad_class() != r->quad_class()) continue;
            if (ExtScalar::dist(q, *r).is_zero()) {
              dup = true;
              break;
            }
          }
          if (!dup) seg.push_back(*r);
        }
      }
      if (static_cast<int>(seg.size()) != w)
        fail(errc::spectrum_not_split,
             "ramified eigenvalues are not resolved by a single square root");
      for (const ExtScalar& q : seg) out.push_back({q, 1});
    } else {
      fail(errc::spectrum_not_split,
           "eigenvalue valuations need a ramification degree above two");
    }
  }

  std::sort(out.begin(), out.end(), [](const CharRoot& x, const CharRoot& y) {
    return canonical_less(x.value, y.value);
  });
  return out;
}

Mat<ExtScalar> embed_matrix(const PMatrix& a) {
  Mat<ExtScalar> r(a.prime(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = ExtScalar::embed(a.at(i, j));
  return r;
}

namespace {

// Nullspace vector of a matrix whose rank is n-1 at precision: row echelon
// with certified pivots, expecting exactly one column to collapse.
Mat<ExtScalar> kernel_vector(Mat<ExtScalar> w) {
  const int n = w.rows();
  const std::uint32_t p = w.prime();
  std::vector<int> pivot_col;
  std::vector<int> free_cols;
  int r = 0;
  for (int j = 0; j < n; ++j) {
    int bi = -1;
    ExactPower best = ExactPower::zero();
    ExactPower loose = ExactPower::zero();
    for (int i = r; i < n; ++i) {
      const ExtScalar& e = w.at(i, j);
      if (e.certified_nonzero()) {
        if (bi < 0 || best < e.norm()) {
          bi = i;
          best = e.norm();
        }
      } else if (!e.is_exact_zero()) {
        loose = ExactPower::max(loose, e.norm_upper_bound());
      }
    }
    if (bi < 0) {
      free_cols.push_back(j);
      continue;
    }
    if (best < loose)
      fail(errc::precision_exhausted,
           "kernel pivot is dominated by an uncertified entry");
    if (bi != r)
      for (int jj = 0; jj < n; ++jj) std::swap(w.at(bi, jj), w.at(r, jj));
    for (int i = r + 1; i < n; ++i) {
      const ExtScalar fct = w.at(i, j) / w.at(r, j);
      if (fct.is_zero()) continue;
      for (int jj = j + 1; jj < n; ++jj) w.at(i, jj) -= fct * w.at(r, jj);
    }
    pivot_col.push_back(j);
    ++r;
  }
  if (free_cols.size() != 1)
    fail(errc::precision_exhausted,
         "kernel dimension is not certified to be one");
  const int fc = free_cols.front();

  Mat<ExtScalar> x(p, n, 1);
  x.at(fc, 0) = ExtScalar::one(p, kMaxPrecision);
  for (int rr = r - 1; rr >= 0; --rr) {
    const int pc = pivot_col[rr];
    ExtScalar acc = ExtScalar::zero(p);
    for (int j = pc + 1; j < n; ++j) acc += w.at(rr, j) * x.at(j, 0);
    if (fc < pc) acc += w.at(rr, fc);  // zero-at-precision residue, x[fc] = 1
    x.at(pc, 0) = -(acc / w.at(rr, pc));
  }
  return x;
}

}  // namespace

EigDecomposition eig_symmetric(const PMatrix& a) {
  if (!a.is_square())
    fail(errc::dimension_mismatch, "eig_symmetric needs a square matrix");
  if (!a.is_symmetric()) fail(errc::not_symmetric, "input is not symmetric");
  const std::uint32_t p = a.prime();
  const int n = a.rows();

  std::vector<ExtScalar> lams;
  for (const CharRoot& cr : char_roots(a)) {
    if (cr.multiplicity > 1)
      fail(errc::repeated_eigenvalues, "eigenvalue zero repeats");
    lams.push_back(cr.value);
  }
  for (std::size_t i = 0; i < lams.size(); ++i) {
    for (std::size_t j = i + 1; j < lams.size(); ++j) {
      // Distinct quadratic classes cannot collide; same-class pairs must
      // stay separated at precision.
      if (lams[i].quad_class() != lams[j].quad_class()) continue;
      if (ExtScalar::dist(lams[i], lams[j]).is_zero())
        fail(errc::repeated_eigenvalues,
             "eigenvalues are not separated at working precision");
    }
  }

  QuadClass joint = QuadClass::kOne;
  for (const ExtScalar& l : lams) {
    if (l.quad_class() == QuadClass::kOne) continue;
    if (joint == QuadClass::kOne)
      joint = l.quad_class();
    else if (joint != l.quad_class())
      fail(errc::spectrum_not_split,
           "eigenvalues span distinct quadratic extensions");
  }

  const Mat<ExtScalar> ae = embed_matrix(a);
  EigDecomposition dec;
  dec.eigenvalues = lams;
  dec.C = Mat<ExtScalar>(p, n, n);
  for (int i = 0; i < n; ++i) {
    Mat<ExtScalar> shifted = ae;
    for (int d = 0; d < n; ++d)
      shifted.at(d, d) = shifted.at(d, d) - lams[i];
    const Mat<ExtScalar> v = kernel_vector(shifted);
    for (int j = 0; j < n; ++j) dec.C.at(i, j) = v.at(j, 0);
  }

  // Isometric normalization: divide each row by sqrt(v . v) when every such
  // root lives in one quadratic class alongside the eigenvalues themselves.
  bool iso = true;
  std::vector<ExtScalar> scales;
  QuadClass scale_class = QuadClass::kOne;
  for (int i = 0; i < n && iso; ++i) {
    ExtScalar q = ExtScalar::zero(p);
    for (int j = 0; j < n; ++j) q += dec.C.at(i, j) * dec.C.at(i, j);
    if (!q.certified_nonzero()) {
      iso = false;
      break;
    }
    if (joint == QuadClass::kOne) {
      const ExtScalar s = padic_sqrt(q.a());
      if (s.quad_class() != QuadClass::kOne) {
        if (scale_class == QuadClass::kOne)
          scale_class = s.quad_class();
        else if (scale_class != s.quad_class())
          iso = false;
      }
      if (iso) scales.push_back(s);
    } else {
      const std::optional<ExtScalar> s = ext_sqrt(q);
      if (!s)
        iso = false;
      else
        scales.push_back(*s);
    }
  }

  if (iso) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dec.C.at(i, j) = dec.C.at(i, j) / scales[i];
    dec.Cinv = dec.C.transpose();
    dec.isometric = true;
  } else {
    dec.Cinv = inverse(dec.C);
    dec.isometric = false;
  }
  return dec;
}

Mat<ExtScalar> eigenvalue_diagonal(const EigDecomposition& e) {
  const int n = e.C.rows();
  Mat<ExtScalar> d(e.C.prime(), n, n);
  for (int i = 0; i < n; ++i) d.at(i, i) = e.eigenvalues[i];
  return d;
}

}  // namespace padop
