// padop: exact p-adic operator laboratory, JSON in / JSON out.
//
// One binary, subcommands sharing the arithmetic kernel and precision
// context.  Reports are canonical JSON (compact, sorted keys): identical
// inputs with identical flags produce byte-identical bytes unless --timing
// is requested.  Exit codes: 0 success, 2 domain errors (the report carries
// the error name), 3 malformed input.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "padop/derivation.hpp"
#include "padop/eig.hpp"
#include "padop/errors.hpp"
#include "padop/ext.hpp"
#include "padop/funcalc.hpp"
#include "padop/json_io.hpp"
#include "padop/ldu.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/roots.hpp"
#include "padop/scalar.hpp"
#include "padop/selftest.hpp"
#include "padop/span.hpp"

namespace {

using njson = nlohmann::json;
using namespace padop;

constexpr const char* kVersion = "padop 0.1.0";

struct Job {
  std::string command;
  std::uint32_t p = 5;
  bool p_given = false;
  int prec = kDefaultPrecision;
  std::uint64_t seed = 42;
  std::string in = "-";
  std::string out = "-";
  bool timing = false;
  int n_max = 4;      // selftest
  int degree = 2;     // root
};

// ---- plumbing ---------------------------------------------------------------

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) fail(errc::malformed_input, "$: cannot open input " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) fail(errc::domain_error, "cannot open output " + path);
  f << text << "\n";
}

njson parse_root_object(const std::string& text) {
  njson j = njson::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::malformed_input, "$: not valid JSON");
  if (!j.is_object()) fail(errc::malformed_input, "$: expected an object");
  return j;
}

const njson& member(const njson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(errc::malformed_input, std::string("$.") + key + ": missing field");
  return *it;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// The payload's prime wins; an explicit -p that disagrees is an error.
void reconcile_prime(Job& job, std::uint32_t payload_p) {
  if (job.p_given && job.p != payload_p)
    fail(errc::prime_mismatch, "-p disagrees with the payload prime");
  job.p = payload_p;
}

njson pj(const ExactPower& w) { return njson::parse(power_to_json(w)); }
njson mj(const PMatrix& a) { return njson::parse(matrix_to_json(a)); }
njson sj(const PadicScalar& x) { return njson::parse(scalar_to_json(x)); }
njson xj(const ExtScalar& x) { return njson::parse(ext_to_json(x)); }
njson dj(const DerivationMap& d) { return njson::parse(derivation_to_json(d)); }

njson ematrix_json(const EMatrix& a) {
  njson rows = njson::array();
  for (int i = 0; i < a.rows(); ++i) {
    njson row = njson::array();
    for (int k = 0; k < a.cols(); ++k) row.push_back(xj(a.at(i, k)));
    rows.push_back(std::move(row));
  }
  njson j;
  j["p"] = a.prime();
  j["n"] = a.rows();
  j["entries"] = std::move(rows);
  return j;
}

// Asserted inequality with both sides as exact exponents.
njson le_check(const std::string& what, const ExactPower& lhs,
               const ExactPower& rhs) {
  njson c;
  c["check"] = what;
  c["lhs"] = pj(lhs);
  c["rhs"] = pj(rhs);
  c["holds"] = !(lhs > rhs);
  return c;
}

njson zero_check(const std::string& what, const ExactPower& lhs) {
  njson c;
  c["check"] = what;
  c["lhs"] = pj(lhs);
  c["rhs"] = pj(ExactPower::zero());
  c["holds"] = lhs.is_zero();
  return c;
}

ExactPower max_commutator(const std::vector<PMatrix>& xs,
                          const std::vector<PMatrix>& ys) {
  ExactPower m = ExactPower::zero();
  for (const PMatrix& x : xs)
    for (const PMatrix& y : ys)
      m = ExactPower::max(m, (x * y - y * x).norm());
  return m;
}

struct Outcome {
  njson result;
  njson certification = njson::array();
};

// ---- command handlers -------------------------------------------------------

Outcome run_norm(Job& job, const njson& in) {
  Outcome o;
  if (in.contains("entries")) {
    const PMatrix a = parse_matrix_json(in.dump());
    reconcile_prime(job, a.prime());
    ExactPower bound = ExactPower::zero();
    for (int i = 0; i < a.rows(); ++i)
      for (int k = 0; k < a.cols(); ++k)
        bound = ExactPower::max(bound, a.at(i, k).norm_upper_bound());
    o.result["norm"] = pj(a.norm());
    o.result["upper_bound"] = pj(bound);
    o.certification.push_back(le_check("norm <= upper_bound", a.norm(), bound));
    return o;
  }
  const PadicScalar x = parse_scalar_json(in.dump());
  reconcile_prime(job, x.prime());
  o.result["norm"] = pj(x.norm());
  o.result["upper_bound"] = pj(x.norm_upper_bound());
  o.certification.push_back(
      le_check("norm <= upper_bound", x.norm(), x.norm_upper_bound()));
  return o;
}

Outcome run_ldu(Job& job, const njson& in) {
  const PMatrix a = parse_matrix_json(in.dump());
  reconcile_prime(job, a.prime());
  const TriDecomposition d = ldu_decompose(a);
  Outcome o;
  o.result["rank"] = d.rank;
  o.result["row_perm"] = d.row_perm;
  o.result["col_perm"] = d.col_perm;
  o.result["c"] = mj(d.C);
  o.result["t"] = mj(d.T);
  o.result["e"] = mj(d.E);
  const PMatrix id = PMatrix::identity(a.prime(), a.rows());
  o.certification.push_back(zero_check(
      "PrAPc == C*T*E", PMatrix::dist(permuted_input(d, a), d.C * d.T * d.E)));
  o.certification.push_back(
      le_check("|C - I| <= 1", (d.C - id).norm(), ExactPower::one()));
  o.certification.push_back(
      le_check("|E - I| <= 1", (d.E - id).norm(), ExactPower::one()));
  return o;
}

Outcome run_eig(Job& job, const njson& in) {
  const PMatrix a = parse_matrix_json(in.dump());
  reconcile_prime(job, a.prime());
  const EigDecomposition dec = eig_symmetric(a);
  Outcome o;
  njson vals = njson::array();
  for (const ExtScalar& l : dec.eigenvalues) vals.push_back(xj(l));
  o.result["eigenvalues"] = std::move(vals);
  o.result["c"] = ematrix_json(dec.C);
  o.result["c_inv"] = ematrix_json(dec.Cinv);
  o.result["isometric"] = dec.isometric;
  const EMatrix rec = dec.Cinv * eigenvalue_diagonal(dec) * dec.C;
  o.certification.push_back(zero_check(
      "Cinv*diag*C == A", EMatrix::dist(rec, embed_matrix(a))));
  if (dec.isometric) {
    const EMatrix id = EMatrix::identity(a.prime(), a.rows());
    o.certification.push_back(zero_check(
        "C*C^t == I", EMatrix::dist(dec.C * dec.C.transpose(), id)));
  }
  return o;
}

Outcome run_sqrt(Job& job, const njson& in) {
  const PadicScalar x = parse_scalar_json(in.dump());
  reconcile_prime(job, x.prime());
  const ExtScalar r = padic_sqrt(x);
  Outcome o;
  o.result["root"] = xj(r);
  o.result["class"] = quad_class_name(r.quad_class());
  const ExtScalar back = ExtScalar::from_parts(QuadClass::kOne, x,
                                               PadicScalar::zero(x.prime()));
  o.certification.push_back(
      zero_check("root^2 == x", ExtScalar::dist(r * r, back)));
  return o;
}

Outcome run_root(Job& job, const njson& in) {
  Outcome o;
  if (in.contains("entries")) {
    const PMatrix a = parse_matrix_json(in.dump());
    reconcile_prime(job, a.prime());
    const PMatrix b = operator_root(a, job.degree);
    o.result["root"] = mj(b);
    PMatrix bk = b;
    for (int e = 1; e < job.degree; ++e) bk = bk * b;
    o.certification.push_back(
        zero_check("root^n == A", PMatrix::dist(bk, a)));
    o.certification.push_back(
        zero_check("[root, A] == 0", (b * a - a * b).norm()));
    return o;
  }
  const PadicScalar x = parse_scalar_json(in.dump());
  reconcile_prime(job, x.prime());
  const PadicScalar r = padic_nth_root(x, job.degree);
  o.result["root"] = sj(r);
  PadicScalar rk = r;
  for (int e = 1; e < job.degree; ++e) rk *= r;
  o.certification.push_back(
      zero_check("root^n == x", PadicScalar::dist(rk, x)));
  return o;
}

Outcome run_funcalc(Job& job, const njson& in) {
  const PMatrix a = parse_matrix_json(member(in, "matrix").dump(), "$.matrix");
  reconcile_prime(job, a.prime());
  Outcome o;
  if (in.contains("poly")) {
    const PPolynomial s = parse_poly_json(member(in, "poly").dump(), "$.poly");
    const PMatrix value = poly_eval(s, a);
    const std::int64_t radius =
        a.norm().is_zero() ? 0 : a.norm().log();
    const ExactPower bound = sup_norm_on_ball(s, radius);
    o.result["value"] = mj(value);
    o.certification.push_back(
        le_check("|S(A)| <= sup |S| on the spectral ball", value.norm(), bound));
    return o;
  }
  const std::vector<PadicScalar> samples =
      parse_samples_json(member(in, "table").dump(), "$.table");
  const MahlerSeries f = MahlerSeries::from_samples(a.prime(), samples);
  const PMatrix value = funcalc_spectral(f, a);
  o.result["value"] = mj(value);
  o.certification.push_back(
      le_check("|f(A)| <= max |a_k|", value.norm(), f.sup_norm()));
  return o;
}

Outcome run_clamp(Job& job, const njson& in) {
  const PadicScalar x = parse_scalar_json(in.dump());
  reconcile_prime(job, x.prime());
  const PadicScalar c = clamp(x);
  Outcome o;
  o.result["value"] = sj(c);
  o.certification.push_back(
      le_check("|clamp(x)| <= 1", c.norm(), ExactPower::one()));
  o.certification.push_back(zero_check(
      "clamp(clamp(x)) == clamp(x)", PadicScalar::dist(clamp(c), c)));
  return o;
}

AlgebraSpan algebra_payload(Job& job, const njson& in) {
  const std::vector<PMatrix> gens =
      parse_generators_json(member(in, "algebra").dump(), "$.algebra");
  reconcile_prime(job, gens.front().prime());
  return close_span(gens);
}

Outcome run_deriv_check(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  const DerivationMap d =
      parse_derivation_json(member(in, "derivation").dump(), "$.derivation");
  if (d.p != alg.p) fail(errc::prime_mismatch, "derivation prime differs");
  const ExactPower defect = leibniz_defect(d, alg);
  Outcome o;
  o.result["defect"] = pj(defect);
  o.result["is_derivation"] = defect.is_zero();
  o.certification.push_back(zero_check("Leibniz defect == 0", defect));
  return o;
}

Outcome run_deriv_space(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  Codomain cod = Codomain::kSelf;
  if (in.contains("codomain")) {
    const std::string c = member(in, "codomain").get<std::string>();
    if (c == "ambient")
      cod = Codomain::kAmbient;
    else if (c != "self")
      fail(errc::malformed_input, "$.codomain: expected \"self\" or \"ambient\"");
  }
  const std::vector<DerivationMap> space = derivation_space(alg, cod);
  Outcome o;
  o.result["dimension"] = space.size();
  njson basis = njson::array();
  ExactPower worst = ExactPower::zero();
  for (const DerivationMap& d : space) {
    basis.push_back(dj(d));
    worst = ExactPower::max(worst, leibniz_defect(d, alg));
  }
  o.result["basis"] = std::move(basis);
  o.certification.push_back(zero_check("max Leibniz defect == 0", worst));
  return o;
}

Outcome run_deriv_solve(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  const DerivationMap d =
      parse_derivation_json(member(in, "derivation").dump(), "$.derivation");
  if (d.p != alg.p) fail(errc::prime_mismatch, "derivation prime differs");
  const InnerSolveResult res = solve_inner(d, alg);
  Outcome o;
  o.result["status"] = res.inner ? "inner" : "not_inner";
  o.result["dimension"] = res.derivation_space_dimension;
  o.result["residual"] = pj(res.residual);
  o.result["residual_bound"] = pj(res.residual_bound);
  if (res.inner) {
    o.result["witness"] = mj(res.witness);
    o.certification.push_back(zero_check("residual == 0", res.residual));
  } else {
    o.result["mismatch"] = pj(res.mismatch);
    njson c;
    c["check"] = "system certified inconsistent";
    c["lhs"] = pj(res.mismatch);
    c["rhs"] = pj(ExactPower::zero());
    c["holds"] = !res.mismatch.is_zero();
    o.certification.push_back(std::move(c));
  }
  return o;
}

Outcome run_center(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  const AlgebraSpan z = center(alg);
  Outcome o;
  o.result["dimension"] = z.dimension();
  njson basis = njson::array();
  for (const PMatrix& b : z.basis) basis.push_back(mj(b));
  o.result["basis"] = std::move(basis);
  o.certification.push_back(zero_check(
      "center commutes with the algebra", max_commutator(z.basis, alg.basis)));
  return o;
}

Outcome run_commutant(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  const AlgebraSpan q = commutant(alg, alg.n);
  Outcome o;
  o.result["dimension"] = q.dimension();
  njson basis = njson::array();
  for (const PMatrix& b : q.basis) basis.push_back(mj(b));
  o.result["basis"] = std::move(basis);
  o.certification.push_back(zero_check(
      "commutant commutes with the algebra",
      max_commutator(q.basis, alg.basis)));
  return o;
}

Outcome run_carrier(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  const PMatrix a = parse_matrix_json(member(in, "matrix").dump(), "$.matrix");
  if (a.prime() != alg.p) fail(errc::prime_mismatch, "matrix prime differs");
  const PMatrix c = central_carrier(a, alg);
  Outcome o;
  o.result["carrier"] = mj(c);
  o.certification.push_back(
      zero_check("carrier * A == A", PMatrix::dist(c * a, a)));
  o.certification.push_back(
      zero_check("carrier idempotent", PMatrix::dist(c * c, c)));
  o.certification.push_back(zero_check(
      "carrier central", max_commutator({c}, alg.basis)));
  return o;
}

Outcome run_killing(Job& job, const njson& in) {
  const AlgebraSpan alg = algebra_payload(job, in);
  Outcome o;
  if (in.contains("a") || in.contains("b")) {
    const PMatrix a = parse_matrix_json(member(in, "a").dump(), "$.a");
    const PMatrix b = parse_matrix_json(member(in, "b").dump(), "$.b");
    const PadicScalar v = killing_form(a, b, alg);
    o.result["value"] = sj(v);
    o.certification.push_back(zero_check(
        "kappa(a,b) == kappa(b,a)",
        PadicScalar::dist(v, killing_form(b, a, alg))));
    return o;
  }
  const KillingGram kg = killing_gram(alg);
  njson basis = njson::array();
  for (const PMatrix& b : kg.basis) basis.push_back(mj(b));
  o.result["basis"] = std::move(basis);
  o.result["gram"] = mj(kg.gram);
  o.result["det"] = sj(kg.det);
  o.certification.push_back(zero_check(
      "gram symmetric", PMatrix::dist(kg.gram, kg.gram.transpose())));
  return o;
}

Outcome run_selftest_cmd(Job& job) {
  const SelftestReport rep =
      run_selftest(job.p, job.n_max, job.prec, job.seed);
  Outcome o;
  o.result = njson::parse(selftest_report_json(rep));
  njson c;
  c["check"] = "all suites passed";
  c["lhs"] = rep.all_passed ? 0 : 1;
  c["rhs"] = 0;
  c["holds"] = rep.all_passed;
  o.certification.push_back(std::move(c));
  return o;
}

// ---- dispatch ---------------------------------------------------------------

int run_job(Job& job) {
  const auto started = std::chrono::steady_clock::now();
  njson report;
  report["command"] = job.command;
  report["version"] = kVersion;
  int code = 0;
  try {
    if (!is_prime(job.p)) fail(errc::domain_error, "p must be a prime");
    if (job.prec < 4 || job.prec > kMaxPrecision)
      fail(errc::domain_error, "precision must lie in [4, 256]");

    Outcome o;
    if (job.command == "selftest") {
      o = run_selftest_cmd(job);
    } else {
      const njson in = parse_root_object(read_input(job.in));
      if (job.command == "norm") o = run_norm(job, in);
      else if (job.command == "ldu") o = run_ldu(job, in);
      else if (job.command == "eig") o = run_eig(job, in);
      else if (job.command == "sqrt") o = run_sqrt(job, in);
      else if (job.command == "root") o = run_root(job, in);
      else if (job.command == "funcalc") o = run_funcalc(job, in);
      else if (job.command == "clamp") o = run_clamp(job, in);
      else if (job.command == "deriv-check") o = run_deriv_check(job, in);
      else if (job.command == "deriv-space") o = run_deriv_space(job, in);
      else if (job.command == "deriv-solve") o = run_deriv_solve(job, in);
      else if (job.command == "center") o = run_center(job, in);
      else if (job.command == "commutant") o = run_commutant(job, in);
      else if (job.command == "carrier") o = run_carrier(job, in);
      else if (job.command == "killing") o = run_killing(job, in);
      else fail(errc::domain_error, "unknown command " + job.command);
    }
    report["result"] = std::move(o.result);
    report["certification"] = std::move(o.certification);
  } catch (const Error& e) {
    njson err;
    err["name"] = errc_name(e.code());
    err["message"] = e.what();
    report["error"] = std::move(err);
    code = e.code() == errc::malformed_input ? 3 : 2;
  }
  njson params;
  params["p"] = job.p;
  params["prec"] = job.prec;
  params["seed"] = job.seed;
  if (job.command == "selftest") params["n_max"] = job.n_max;
  if (job.command == "root") params["degree"] = job.degree;
  report["params"] = std::move(params);
  if (job.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  write_output(job.out, report.dump());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Job job;
  const char* env_prec = std::getenv("PADOP_PREC");
  if (env_prec && *env_prec) job.prec = std::atoi(env_prec);

  CLI::App app{"exact p-adic operator laboratory"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  auto* popt = app.add_option("-p,--prime", job.p, "prime of the base field");
  app.add_option("--prec", job.prec,
                 "working precision in digits (PADOP_PREC overrides the default)");
  app.add_option("--seed", job.seed, "seed for randomized suites");
  app.add_option("--in", job.in, "input payload path, - for stdin");
  app.add_option("--out", job.out, "report path, - for stdout");
  app.add_flag("--timing", job.timing,
               "include elapsed milliseconds (reports stop being byte-stable)");

  const struct {
    const char* name;
    const char* desc;
  } kCommands[] = {
      {"norm", "exact norm of a scalar or matrix payload"},
      {"ldu", "permuted triangular decomposition PrAPc = C T E"},
      {"eig", "symmetric eigendecomposition with certification"},
      {"sqrt", "square root of a scalar in the minimal quadratic extension"},
      {"root", "n-th root of a scalar or operator (--degree)"},
      {"funcalc", "polynomial or sampled-function calculus on an operator"},
      {"clamp", "shell-scaling clamp of a scalar into the unit ball"},
      {"deriv-check", "Leibniz defect of a candidate derivation on an algebra"},
      {"deriv-space", "basis of the derivation space of an algebra"},
      {"deriv-solve", "inner-derivation solve with witness and residual"},
      {"center", "center of a generated matrix algebra"},
      {"commutant", "commutant of a generated matrix algebra"},
      {"carrier", "central carrier of an algebra member"},
      {"killing", "Killing form value or full Gram matrix"},
      {"selftest", "run the deterministic property suites"},
  };
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.desc);
    sub->callback([&job, name = std::string(c.name)] { job.command = name; });
    if (std::string(c.name) == "selftest")
      sub->add_option("--n-max", job.n_max, "largest matrix size exercised");
    if (std::string(c.name) == "root")
      sub->add_option("--degree", job.degree, "root degree n >= 2");
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  job.p_given = popt->count() > 0;
  return run_job(job);
}
