#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qnahm/registry.hpp"

namespace qnahm {

struct verify_options {
  // Largest scaled order (exponent times denominator) a request may ask for.
  std::int64_t max_order = 2000;
  // Adds q^e to the right side before comparing; used as a negative control.
  std::optional<rational> plant_defect;
};

struct verify_report {
  std::string id;
  rational order;
  std::optional<mismatch> first_mismatch;
  std::string error; // set when a side could not be built
  double elapsed_ms = 0;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;

  bool ok() const { return error.empty() && !first_mismatch; }
  std::string status() const { return !error.empty() ? "error" : first_mismatch ? "mismatch" : "pass"; }
};

inline verify_report verify(const identity_record& rec, const rational& order, const verify_options& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  verify_report rep;
  rep.id = rec.id;
  rep.order = order;
  const std::int64_t scaled_order = ceil(order * rec.den);
  if (scaled_order > opts.max_order)
    throw order_exceeded("requested scaled order " + std::to_string(scaled_order) + " exceeds the maximum " +
                         std::to_string(opts.max_order));
  try {
    const series lhs = at_order(scaled_order, rec.lhs);
    series rhs = at_order(scaled_order, rec.rhs);
    if (opts.plant_defect && *opts.plant_defect < order) {
      const std::int64_t d = lcm_den(rec.den, *opts.plant_defect);
      rhs += series::monomial(q_pow(*opts.plant_defect), d, scaled_order * (d / rec.den));
    }
    rep.lhs_terms = lhs.term_count();
    rep.rhs_terms = rhs.term_count();
    rep.first_mismatch = eq_to_order(lhs, rhs, order).first_mismatch;
  } catch (const error& e) {
    rep.error = e.what();
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline verify_report verify(const std::string& id, std::optional<rational> order = std::nullopt,
                            const verify_options& opts = {}) {
  const auto& rec = find_identity(id);
  return verify(rec, order.value_or(rec.default_order), opts);
}

// Verifies the given records on `threads` workers. Reports come back in input
// order whatever order the workers finish in.
inline std::vector<verify_report> verify_many(const std::vector<const identity_record*>& records,
                                              const rational& order_scale, unsigned threads,
                                              const verify_options& opts = {}) {
  std::vector<verify_report> out(records.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
      const auto& rec = *records[i];
      out[i] = verify(rec, rec.default_order * order_scale, opts);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

inline std::vector<verify_report> verify_all(const rational& order_scale = 1, unsigned threads = 1,
                                             const verify_options& opts = {}) {
  std::vector<const identity_record*> recs;
  for (const auto& r : registry()) recs.push_back(&r);
  return verify_many(recs, order_scale, threads, opts);
}

inline const char* tsv_header() { return "id\tstatus\tmismatch_exp\tlhs_coeff\trhs_coeff\telapsed_ms"; }

inline std::string elapsed_text(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

// Empty fields print as "-".
inline std::string format_tsv(const verify_report& r) {
  std::string line = r.id + "\t" + r.status() + "\t";
  if (r.first_mismatch)
    line += to_string(r.first_mismatch->exponent) + "\t" + r.first_mismatch->lhs.get_str() + "\t" +
            r.first_mismatch->rhs.get_str();
  else
    line += "-\t-\t-";
  return line + "\t" + elapsed_text(r.elapsed_ms);
}

// Coefficients are written as decimal strings since they can exceed 64 bits.
inline std::string format_json(const verify_report& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["status"] = r.status();
  j["order"] = to_string(r.order);
  if (r.first_mismatch) {
    j["mismatch_exp"] = to_string(r.first_mismatch->exponent);
    j["lhs_coeff"] = r.first_mismatch->lhs.get_str();
    j["rhs_coeff"] = r.first_mismatch->rhs.get_str();
  } else {
    j["mismatch_exp"] = nullptr;
    j["lhs_coeff"] = nullptr;
    j["rhs_coeff"] = nullptr;
  }
  if (!r.error.empty()) j["error"] = r.error;
  j["lhs_terms"] = r.lhs_terms;
  j["rhs_terms"] = r.rhs_terms;
  j["elapsed_ms"] = std::stod(elapsed_text(r.elapsed_ms));
  return j.dump();
}

} // namespace qnahm
