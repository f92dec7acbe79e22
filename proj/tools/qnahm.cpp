// qnahm: verify registered q-series identities and expand product expressions.
//
//   qnahm verify --id rr.1 [--order 200]
//   qnahm verify --all [--order-scale 1/2] [--threads 4] [--format json]
//   qnahm list [--tag euler]
//   qnahm expand --expr "P(q;q)^-1" --order 10
//
// Exit status: 0 when everything requested passes, 1 on a mismatch or
// evaluation error, 2 on usage or parse errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnahm/expr.hpp"
#include "qnahm/verify.hpp"

namespace {

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

qnahm::rational rational_arg(const std::string& text, const char* name) {
  try {
    return qnahm::parse_rational(text);
  } catch (const qnahm::parse_error&) {
    throw usage_error(std::string("invalid value for ") + name + ": '" + text + "'");
  }
}

std::int64_t max_order_setting(std::optional<std::int64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QNAHM_MAX_ORDER")) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw usage_error(std::string("QNAHM_MAX_ORDER must be a positive integer, got '") + env + "'");
  }
  return 2000;
}

void print_report(const qnahm::verify_report& r, bool json) {
  std::cout << (json ? qnahm::format_json(r) : qnahm::format_tsv(r)) << '\n';
  if (!r.error.empty()) std::cerr << r.id << ": " << r.error << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series identity verification"};
  app.require_subcommand(1);

  std::string id;
  bool all = false;
  std::string order_text;
  std::string scale_text = "1";
  std::string format = "tsv";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::int64_t> max_order;
  std::string defect_text;

  auto* verify_cmd = app.add_subcommand("verify", "compare both sides of identities to a truncation order");
  auto* id_opt = verify_cmd->add_option("--id", id, "identity id (see `list`)");
  auto* all_flag = verify_cmd->add_flag("--all", all, "verify every registered identity");
  id_opt->excludes(all_flag);
  auto* order_opt = verify_cmd->add_option("--order", order_text, "truncation order in q, e.g. 300 or 201/2");
  order_opt->needs(id_opt);
  verify_cmd->add_option("--order-scale", scale_text, "multiply each default order by this factor")->excludes(order_opt);
  verify_cmd->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  verify_cmd->add_option("--threads", threads, "worker threads for --all")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-order", max_order, "largest accepted scaled order (default 2000, env QNAHM_MAX_ORDER)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--plant-defect", defect_text, "add q^E to every right side (negative control)");

  std::string tag;
  auto* list_cmd = app.add_subcommand("list", "print registered identities");
  list_cmd->add_option("--tag", tag, "only identities with this topic tag");

  std::string expr_text;
  std::string expand_order = "10";
  std::string expand_format = "tsv";
  auto* expand_cmd = app.add_subcommand("expand", "print the coefficients of a product expression");
  expand_cmd->add_option("--expr", expr_text, "expression, e.g. \"P(q,q^4;q^5)^-1\"")->required();
  expand_cmd->add_option("--order", expand_order, "truncation order in q")->required();
  expand_cmd->add_option("--format", expand_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*verify_cmd) {
      if (id.empty() && !all) throw usage_error("verify needs --id or --all");
      qnahm::verify_options opts;
      opts.max_order = max_order_setting(max_order);
      if (!defect_text.empty()) opts.plant_defect = rational_arg(defect_text, "--plant-defect");
      const bool json = format == "json";

      std::vector<qnahm::verify_report> reports;
      if (all) {
        const auto scale = rational_arg(scale_text, "--order-scale");
        if (scale <= 0) throw usage_error("--order-scale must be positive");
        reports = qnahm::verify_all(scale, threads, opts);
      } else {
        const auto& rec = qnahm::find_identity(id);
        std::optional<qnahm::rational> order;
        if (!order_text.empty()) order = rational_arg(order_text, "--order");
        if (order && *order <= 0) throw usage_error("--order must be positive");
        if (!order) order = rec.default_order * rational_arg(scale_text, "--order-scale");
        reports.push_back(qnahm::verify(rec, *order, opts));
      }
      if (!json) std::cout << qnahm::tsv_header() << '\n';
      bool ok = true;
      for (const auto& r : reports) {
        print_report(r, json);
        ok = ok && r.ok();
      }
      return ok ? 0 : exit_fail;
    }

    if (*list_cmd) {
      bool any = false;
      for (const auto& r : qnahm::registry()) {
        if (!tag.empty() && r.tag != tag) continue;
        any = true;
        std::cout << r.id << '\t' << r.tag << '\t' << qnahm::to_string(r.default_order) << '\t' << r.den << '\t'
                  << r.summary << '\n';
      }
      if (!any && !tag.empty()) {
        std::cerr << "no identities with tag '" << tag << "'; tags:";
        for (const auto& t : qnahm::registry_tags()) std::cerr << ' ' << t;
        std::cerr << '\n';
        return exit_usage;
      }
      return 0;
    }

    if (*expand_cmd) {
      const auto order = rational_arg(expand_order, "--order");
      const auto rows = qnahm::expand(expr_text, order);
      for (const auto& [e, c] : rows) {
        if (expand_format == "json") {
          nlohmann::ordered_json j;
          j["exponent"] = qnahm::to_string(e);
          j["coefficient"] = c.get_str();
          std::cout << j.dump() << '\n';
        } else {
          std::cout << qnahm::to_string(e) << '\t' << c.get_str() << '\n';
        }
      }
      return 0;
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qnahm::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qnahm::unknown_identity& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qnahm::order_exceeded& e) {
    // the --max-order guard; failures while building a side are reported per identity
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qnahm::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return 0;
}
