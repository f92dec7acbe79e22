// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Identities are checked through the registry at their stated orders; the
// negative control and the full run go through the command-line tool.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qnahm/catalog.hpp"
#include "qnahm/verify.hpp"

using namespace qnahm;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << detail << ")" << std::endl;
  if (!ok) ++failures;
}

double seconds_since(clock_type::time_point t) {
  return std::chrono::duration<double>(clock_type::now() - t).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << x;
  return o.str();
}

// Verifies the ids at the given order (in q) and per-identity time limit.
void identity_group(const std::string& name, const std::vector<std::string>& ids, std::optional<rational> order,
                    double limit_s) {
  int passed = 0;
  double worst = 0;
  std::string worst_id, first_bad;
  for (const auto& id : ids) {
    const auto& rec = find_identity(id);
    const auto rep = verify(rec, order.value_or(rec.default_order));
    const double s = rep.elapsed_ms / 1000;
    if (s > worst) {
      worst = s;
      worst_id = id;
    }
    if (rep.ok() && s < limit_s)
      ++passed;
    else if (first_bad.empty())
      first_bad = format_tsv(rep) + (rep.error.empty() ? "" : " " + rep.error);
  }
  std::string detail = std::to_string(passed) + "/" + std::to_string(ids.size()) + " exact, slowest " + worst_id +
                       " " + fmt(worst) + " s, limit " + fmt(limit_s, 0) + " s";
  if (!first_bad.empty()) detail += "; first failure: " + first_bad;
  report(name, passed == static_cast<int>(ids.size()), detail);
}

std::vector<std::string> with_prefix(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& r : registry())
    if (r.id.rfind(prefix, 0) == 0) out.push_back(r.id);
  return out;
}

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

struct run_result {
  int code;
  std::string out;
};

run_result run_cli(const std::string& args) {
  const std::string cmd = std::string(QNAHM_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

series from_oracle(const oracle::poly& p, std::int64_t den) {
  series s = series::zero(den, p.order);
  for (const auto& [e, c] : p.c) s += c * series::monomial(q_pow(rational(e, den)), den, p.order);
  return s;
}

series random_series(std::mt19937_64& rng, std::int64_t den, std::int64_t order, bool unit) {
  const std::int64_t val = static_cast<std::int64_t>(rng() % 7) - 3;
  std::vector<integer> c(static_cast<std::size_t>(order - val));
  for (auto& x : c) x = static_cast<long>(rng() % 21) - 10;
  c[0] = unit ? ((rng() & 1) ? 1 : -1) : integer(static_cast<long>(rng() % 5) + 1);
  return series::from_dense(den, val, order, std::move(c));
}

bool same_to_common_order(const series& a, const series& b) {
  return eq_to_order(a, b, std::min(a.order_exponent(), b.order_exponent())).ok();
}

void property_suites() {
  const auto start = clock_type::now();
  std::vector<std::string> bad;

  // theta sum = product on random monomials
  std::mt19937_64 rng(5150);
  int theta_cases = 0;
  for (int trial = 0; trial < 64; ++trial) {
    const std::int64_t b2 = 1 + static_cast<std::int64_t>(rng() % 8);
    const rational b(b2, 2);
    const rational e(-2 * b2 + 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(5 * b2 - 1)), 2);
    const auto c = q_pow(e, (rng() & 1) ? 1 : -1);
    if (theta_sum(c, b, 2, 200) != theta_prod(c, b, 2, 200)) bad.push_back("theta " + to_string(c));
    ++theta_cases;
  }

  // enumeration box doubling
  int lattice_cases = 0;
  for (const auto& n : catalog::lattice_sums()) {
    lattice_options wide;
    wide.enumeration_scale = 2;
    const std::int64_t T = ceil(n.order * n.den);
    if (lattice_sum(n.spec, n.den, T) != lattice_sum(n.spec, n.den, T, wide)) bad.push_back("box " + n.name);
    ++lattice_cases;
  }
  for (const auto& c : detail::thm11_cases()) {
    const auto sides = thm11_pair(sequence_spec::quadratic(c.alpha, c.beta), c.x);
    const std::int64_t den = detail::thm11_den(c);
    lattice_options wide;
    wide.enumeration_scale = 2;
    for (const auto* list : {&sides.lhs, &sides.rhs})
      for (const auto& s : *list) {
        if (lattice_sum(s, den, 100 * den) != lattice_sum(s, den, 100 * den, wide)) bad.push_back("box thm11");
        ++lattice_cases;
      }
  }

  // theta cutoff doubling and the bivariate oracle
  int ct_cases = 0;
  for (const auto& n : catalog::ct_expressions()) {
    ct_options wide;
    wide.cutoff_scale = 2;
    const std::int64_t T = ceil(n.order * n.den);
    if (ct(n.expr, n.den, T) != ct(n.expr, n.den, T, wide)) bad.push_back("cutoff " + n.name);
    std::vector<oracle::ct_factor> fs;
    for (const auto& f : n.expr.factors)
      fs.push_back({f.u.sign, scaled(f.u.exponent, n.den), f.degree, f.base.sign, scaled(f.base.exponent, n.den),
                    f.numerator});
    const auto brute = from_oracle(oracle::ct(n.expr.theta_arg.sign, scaled(n.expr.theta_arg.exponent, n.den),
                                              scaled(n.expr.theta_base, n.den), fs, 100 * n.den),
                                   n.den);
    if (ct(n.expr, n.den, 100 * n.den) != brute) bad.push_back("oracle " + n.name);
    ++ct_cases;
  }

  // ring axioms and inversion
  int ring_cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 3);
    const auto f = random_series(rng, den, 25, false);
    const auto g = random_series(rng, den, 30, false);
    const auto h = random_series(rng, 1 + static_cast<std::int64_t>(rng() % 2), 20, false);
    const auto u = random_series(rng, den, 30, true);
    bool ok = same_to_common_order((f + g) + h, f + (g + h)) && same_to_common_order(f * (g + h), f * g + f * h) &&
              same_to_common_order(f * g, g * f) && same_to_common_order(u * u.inverse(), series::one(den, 60));
    if (!ok) bad.push_back("ring trial " + std::to_string(trial));
    ++ring_cases;
  }

  std::string detail = std::to_string(theta_cases) + " theta, " + std::to_string(lattice_cases) + " box-doubling, " +
                       std::to_string(ct_cases) + " CT cutoff+oracle, " + std::to_string(ring_cases) +
                       " ring/invert cases in " + fmt(seconds_since(start)) + " s";
  if (!bad.empty()) detail += "; first failure: " + bad.front();
  report("property suites", bad.empty() && theta_cases >= 50, detail);
}

void negative_control() {
  const auto r = run_cli("verify --id rr.1 --plant-defect 50");
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  std::vector<std::string> f;
  std::istringstream fl(line);
  for (std::string x; std::getline(fl, x, '\t');) f.push_back(x);
  const bool ok = r.code == 1 && f.size() == 6 && f[1] == "mismatch" && f[2] == "50";
  report("negative control: planted defect at q^50", ok,
         "exit " + std::to_string(r.code) + ", report: " + (line.empty() ? "<none>" : line));
}

void full_run() {
  const auto start = clock_type::now();
  const auto r = run_cli("verify --all --threads 1");
  const double s = seconds_since(start);
  int pass = 0, total = 0;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    ++total;
    if (line.find("\tpass\t") != std::string::npos) ++pass;
  }
  report("verify --all single-threaded under 10 minutes", r.code == 0 && s < 600 && pass == total && total > 0,
         std::to_string(pass) + "/" + std::to_string(total) + " pass in " + fmt(s) + " s, exit " +
             std::to_string(r.code));
}

} // namespace

int main() {
  std::cout << "acceptance: " << registry().size() << " registered identities" << std::endl;

  identity_group("Rogers-Ramanujan to q^200", {"rr.1", "rr.2"}, rational(200), 5);
  identity_group("Example 5 and 10 products, with their Nahm data, to q^300",
                 concat({{"wang.s1", "wang.s2", "vz.s3", "vz.s4"}, with_prefix("nahm.")}), rational(300), 30);
  identity_group("relation S1/S3, S2/S4 and mod-120 product forms to q^300",
                 {"rel.s1s3", "rel.s2s4", "thm13.s1", "thm13.s2"}, rational(300), 30);
  identity_group("two-sided transformation: 20 random cases to q^100, index-change cases",
                 concat({with_prefix("thm11."), with_prefix("idxchg.")}), std::nullopt, 10);
  identity_group("Euler, triple product, quasi-periodicity, Chu-Vandermonde, conversions",
                 concat({with_prefix("euler."), with_prefix("jtp."), with_prefix("quasi."), with_prefix("chu."),
                         with_prefix("s12exp."), with_prefix("ct."), with_prefix("s1alt"), with_prefix("s2alt")}),
                 std::nullopt, 30);
  identity_group("Rogers mod-20 to q^200, reduction lemma to q^240, its specializations",
                 concat({with_prefix("rogers."), with_prefix("lemma31."), with_prefix("thm13.proof.")}),
                 std::nullopt, 30);
  identity_group("half-base sums at D=2 to q^100, H representation and corollary to q^300",
                 concat({with_prefix("s12new."), with_prefix("hrep"), with_prefix("cor41")}), std::nullopt, 30);
  property_suites();
  negative_control();
  full_run();

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
