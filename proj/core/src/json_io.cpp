#include "padop/json_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "padop/errors.hpp"

namespace padop {

namespace {

using njson = nlohmann::json;

[[noreturn]] void bad(const std::string& at, const std::string& what) {
  fail(errc::malformed_input, at + ": " + what);
}

njson parse_text(const std::string& text, const std::string& at) {
  njson j = njson::parse(text, nullptr, false);
  if (j.is_discarded()) bad(at, "not valid JSON");
  return j;
}

void require_object(const njson& j, const std::string& at) {
  if (!j.is_object()) bad(at, "expected an object");
}

void reject_unknown(const njson& j, const std::string& at,
                    std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) bad(at + "." + item.key(), "unknown field");
  }
}

const njson& field(const njson& j, const char* key, const std::string& at) {
  auto it = j.find(key);
  if (it == j.end()) bad(at + "." + key, "missing field");
  return *it;
}

long long int_field(const njson& j, const char* key, const std::string& at) {
  const njson& v = field(j, key, at);
  if (!v.is_number_integer()) bad(at + "." + key, "expected an integer");
  return v.get<long long>();
}

bool small_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t prime_field(const njson& j, const std::string& at) {
  const long long p = int_field(j, "p", at);
  if (p > std::numeric_limits<std::uint32_t>::max() || !small_prime(p))
    bad(at + ".p", "expected a prime");
  return static_cast<std::uint32_t>(p);
}

PadicScalar scalar_node(const njson& j, const std::string& at) {
  require_object(j, at);
  const std::uint32_t p = prime_field(j, at);
  if (j.contains("zero")) {
    reject_unknown(j, at, {"p", "zero", "floor"});
    const njson& z = field(j, "zero", at);
    if (!z.is_boolean() || !z.get<bool>()) bad(at + ".zero", "expected true");
    if (j.contains("floor")) {
      const long long f = int_field(j, "floor", at);
      return PadicScalar::zero_at_precision(p, f);
    }
    return PadicScalar::zero(p);
  }
  reject_unknown(j, at, {"p", "v", "digits"});
  const long long v = int_field(j, "v", at);
  const njson& dj = field(j, "digits", at);
  if (!dj.is_array() || dj.empty()) bad(at + ".digits", "expected a nonempty array");
  if (dj.size() > static_cast<std::size_t>(kMaxPrecision))
    bad(at + ".digits", "too many digits");
  std::vector<std::uint32_t> digits;
  digits.reserve(dj.size());
  for (std::size_t k = 0; k < dj.size(); ++k) {
    const std::string dat = at + ".digits[" + std::to_string(k) + "]";
    if (!dj[k].is_number_integer()) bad(dat, "expected an integer");
    const long long d = dj[k].get<long long>();
    if (d < 0 || d >= static_cast<long long>(p)) bad(dat, "digit out of range");
    if (k == 0 && d == 0) bad(dat, "leading digit of a nonzero value must be nonzero");
    digits.push_back(static_cast<std::uint32_t>(d));
  }
  return PadicScalar::from_digit_string(p, v, digits);
}

njson scalar_json(const PadicScalar& x) {
  njson j;
  j["p"] = x.prime();
  if (x.is_exact_zero()) {
    j["zero"] = true;
  } else if (x.is_zero_at_precision()) {
    j["zero"] = true;
    j["floor"] = x.zero_floor();
  } else {
    j["v"] = x.valuation();
    j["digits"] = x.digits();
  }
  return j;
}

QuadClass class_node(const njson& j, const std::string& at) {
  if (!j.is_string()) bad(at, "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "1") return QuadClass::kOne;
  if (s == "u") return QuadClass::kU;
  if (s == "p") return QuadClass::kP;
  if (s == "pu") return QuadClass::kPU;
  bad(at, "expected one of 1, u, p, pu");
}

PMatrix matrix_node(const njson& j, const std::string& at) {
  require_object(j, at);
  reject_unknown(j, at, {"p", "n", "entries"});
  const std::uint32_t p = prime_field(j, at);
  const long long n = int_field(j, "n", at);
  if (n < 1 || n > 64) bad(at + ".n", "expected a size in [1, 64]");
  const njson& ej = field(j, "entries", at);
  if (!ej.is_array() || ej.size() != static_cast<std::size_t>(n))
    bad(at + ".entries", "expected n rows");
  PMatrix a(p, static_cast<int>(n), static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    const std::string rat = at + ".entries[" + std::to_string(i) + "]";
    if (!ej[static_cast<std::size_t>(i)].is_array() ||
        ej[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
      bad(rat, "expected n entries");
    for (int k = 0; k < n; ++k) {
      const std::string eat = rat + "[" + std::to_string(k) + "]";
      a.at(i, k) = scalar_node(
          ej[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], eat);
      if (a.at(i, k).prime() != p) bad(eat + ".p", "prime differs from the matrix");
    }
  }
  return a;
}

njson matrix_json(const PMatrix& a) {
  njson rows = njson::array();
  for (int i = 0; i < a.rows(); ++i) {
    njson row = njson::array();
    for (int k = 0; k < a.cols(); ++k) row.push_back(scalar_json(a.at(i, k)));
    rows.push_back(std::move(row));
  }
  njson j;
  j["p"] = a.prime();
  j["n"] = a.rows();
  j["entries"] = std::move(rows);
  return j;
}

}  // namespace

PadicScalar parse_scalar_json(const std::string& text, const std::string& at) {
  return scalar_node(parse_text(text, at), at);
}

ExtScalar parse_ext_json(const std::string& text, const std::string& at) {
  const njson j = parse_text(text, at);
  require_object(j, at);
  reject_unknown(j, at, {"p", "d", "a", "b"});
  const std::uint32_t p = prime_field(j, at);
  const QuadClass cls = class_node(field(j, "d", at), at + ".d");
  const PadicScalar a = scalar_node(field(j, "a", at), at + ".a");
  const PadicScalar b = scalar_node(field(j, "b", at), at + ".b");
  if (a.prime() != p) bad(at + ".a.p", "prime differs from the element");
  if (b.prime() != p) bad(at + ".b.p", "prime differs from the element");
  if (cls == QuadClass::kOne && !b.is_exact_zero())
    bad(at + ".b", "the base field has no root component");
  return ExtScalar::from_parts(cls, a, b);
}

PMatrix parse_matrix_json(const std::string& text, const std::string& at) {
  return matrix_node(parse_text(text, at), at);
}

PPolynomial parse_poly_json(const std::string& text, const std::string& at) {
  const njson j = parse_text(text, at);
  require_object(j, at);
  reject_unknown(j, at, {"p", "coeffs"});
  const njson& cj = field(j, "coeffs", at);
  if (!cj.is_array()) bad(at + ".coeffs", "expected an array");
  std::uint32_t p = 0;
  if (j.contains("p")) p = prime_field(j, at);
  std::vector<PadicScalar> coeffs;
  coeffs.reserve(cj.size());
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const std::string cat = at + ".coeffs[" + std::to_string(k) + "]";
    coeffs.push_back(scalar_node(cj[k], cat));
    if (p == 0) p = coeffs.back().prime();
    if (coeffs.back().prime() != p) bad(cat + ".p", "prime differs from the polynomial");
  }
  if (p == 0) bad(at, "a polynomial without coefficients needs an explicit p");
  return PPolynomial(p, std::move(coeffs));
}

std::vector<PadicScalar> parse_samples_json(const std::string& text,
                                            const std::string& at) {
  const njson j = parse_text(text, at);
  require_object(j, at);
  reject_unknown(j, at, {"domain", "samples"});
  const njson& dj = field(j, "domain", at);
  if (!dj.is_string() || dj.get<std::string>() != "Zp")
    bad(at + ".domain", "expected \"Zp\"");
  const njson& sj = field(j, "samples", at);
  if (!sj.is_array() || sj.empty()) bad(at + ".samples", "expected a nonempty array");
  std::vector<PadicScalar> out;
  out.reserve(sj.size());
  for (std::size_t k = 0; k < sj.size(); ++k) {
    const std::string sat = at + ".samples[" + std::to_string(k) + "]";
    out.push_back(scalar_node(sj[k], sat));
    if (out.back().prime() != out.front().prime())
      bad(sat + ".p", "prime differs from the table");
  }
  return out;
}

DerivationMap parse_derivation_json(const std::string& text,
                                    const std::string& at) {
  const njson j = parse_text(text, at);
  require_object(j, at);
  reject_unknown(j, at, {"n", "matrix", "vec_order"});
  const long long n = int_field(j, "n", at);
  if (n < 1 || n > 16) bad(at + ".n", "expected a size in [1, 16]");
  const njson& vj = field(j, "vec_order", at);
  if (!vj.is_string() || vj.get<std::string>() != "row-major")
    bad(at + ".vec_order", "expected \"row-major\"");
  const njson& mj = field(j, "matrix", at);
  const long long nn = n * n;
  if (!mj.is_array() || mj.size() != static_cast<std::size_t>(nn))
    bad(at + ".matrix", "expected n^2 rows");
  std::uint32_t p = 0;
  PMatrix m;
  for (long long t = 0; t < nn; ++t) {
    const std::string rat = at + ".matrix[" + std::to_string(t) + "]";
    const njson& row = mj[static_cast<std::size_t>(t)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(nn))
      bad(rat, "expected n^2 entries");
    for (long long u = 0; u < nn; ++u) {
      const std::string eat = rat + "[" + std::to_string(u) + "]";
      PadicScalar e = scalar_node(row[static_cast<std::size_t>(u)], eat);
      if (p == 0) {
        p = e.prime();
        m = PMatrix(p, static_cast<int>(nn), static_cast<int>(nn));
      }
      if (e.prime() != p) bad(eat + ".p", "prime differs from the map");
      m.at(static_cast<int>(t), static_cast<int>(u)) = std::move(e);
    }
  }
  DerivationMap d;
  d.p = p;
  d.n = static_cast<int>(n);
  d.m = std::move(m);
  return d;
}

std::vector<PMatrix> parse_generators_json(const std::string& text,
                                           const std::string& at) {
  const njson j = parse_text(text, at);
  require_object(j, at);
  reject_unknown(j, at, {"generators"});
  const njson& gj = field(j, "generators", at);
  if (!gj.is_array() || gj.empty())
    bad(at + ".generators", "expected a nonempty array");
  std::vector<PMatrix> out;
  out.reserve(gj.size());
  for (std::size_t k = 0; k < gj.size(); ++k)
    out.push_back(
        matrix_node(gj[k], at + ".generators[" + std::to_string(k) + "]"));
  return out;
}

std::string scalar_to_json(const PadicScalar& x) { return scalar_json(x).dump(); }

std::string ext_to_json(const ExtScalar& x) {
  njson j;
  j["p"] = x.prime();
  j["d"] = quad_class_name(x.quad_class());
  j["a"] = scalar_json(x.a());
  j["b"] = scalar_json(x.b());
  return j.dump();
}

std::string matrix_to_json(const PMatrix& a) { return matrix_json(a).dump(); }

std::string poly_to_json(const PPolynomial& s) {
  njson arr = njson::array();
  for (const PadicScalar& c : s.coeffs()) arr.push_back(scalar_json(c));
  njson j;
  j["p"] = s.prime();
  j["coeffs"] = std::move(arr);
  return j.dump();
}

std::string samples_to_json(const std::vector<PadicScalar>& v) {
  njson arr = njson::array();
  for (const PadicScalar& x : v) arr.push_back(scalar_json(x));
  njson j;
  j["domain"] = "Zp";
  j["samples"] = std::move(arr);
  return j.dump();
}

std::string derivation_to_json(const DerivationMap& d) {
  njson rows = njson::array();
  for (int t = 0; t < d.m.rows(); ++t) {
    njson row = njson::array();
    for (int u = 0; u < d.m.cols(); ++u) row.push_back(scalar_json(d.m.at(t, u)));
    rows.push_back(std::move(row));
  }
  njson j;
  j["n"] = d.n;
  j["matrix"] = std::move(rows);
  j["vec_order"] = "row-major";
  return j.dump();
}

std::string power_to_json(const ExactPower& w) {
  njson j;
  if (w.is_zero()) {
    j["zero"] = true;
  } else if (w.is_integral()) {
    j["exp"] = w.log();
  } else {
    j["exp2"] = w.twice_log();
  }
  return j.dump();
}

}  // namespace padop
