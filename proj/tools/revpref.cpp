// Command-line front end: dataset ingestion, axiom checks, constructions,
// efficiency index, and the synthetic-data generator.
//
// Exit codes: 0 pass/value, 1 axiom failure, 2 input or internal error.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "revpref/abstract.hpp"
#include "revpref/afriat.hpp"
#include "revpref/dataset.hpp"
#include "revpref/efficiency.hpp"
#include "revpref/engine.hpp"
#include "revpref/generator.hpp"
#include "revpref/io.hpp"
#include "revpref/mechanism.hpp"

namespace {

using nlohmann::json;
using namespace revpref;

constexpr int kExitPass = 0;
constexpr int kExitAxiomFail = 1;
constexpr int kExitError = 2;

long max_observations() {
  if (const char* cap = std::getenv("REVPREF_MAX_T")) {
    try {
      return std::stol(cap);
    } catch (...) {
      throw std::invalid_argument("REVPREF_MAX_T is not an integer");
    }
  }
  return 10000;
}

void enforce_cap(long count, const char* what) {
  const long cap = max_observations();
  if (count > cap) {
    throw std::invalid_argument(std::string(what) + " count " + std::to_string(count) +
                                " exceeds the safety cap " + std::to_string(cap) +
                                " (REVPREF_MAX_T)");
  }
}

struct Outcome {
  json report;
  int exit_code = kExitPass;
};

void render_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      render_text(value, out, prefix + key + ".");
    } else {
      out << prefix << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
    }
  }
}

json verdict_of_witness(const std::optional<ViolationWitness>& witness) {
  json report;
  if (witness) {
    report["verdict"] = "fail";
    report["witness"] = json_of_witness(*witness);
  } else {
    report["verdict"] = "pass";
  }
  return report;
}

PurchaseDataset load_purchases(const std::string& path) {
  PurchaseDataset data = parse_purchase_csv(path);
  enforce_cap(data.observations(), "observation");
  return data;
}

Preorder preorder_for(const ChoiceInput& input, const std::string& flag) {
  if (!flag.empty()) return resolve_preorder(flag, input.data);
  if (input.preorder) return *input.preorder;
  throw std::invalid_argument("no preorder given: supply one in the file or via --preorder");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revealed-preference consistency tests, rationalizing constructions, "
               "efficiency indices, and contract synthesis over exact rationals"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string input_path;
  std::string e_text = "1";
  std::string preorder_flag;
  std::string table_path;

  std::optional<std::function<Outcome()>> run;
  const auto arm = [&run](CLI::App* cmd, std::function<Outcome()> fn) {
    cmd->callback([&run, fn = std::move(fn)] { run = fn; });
  };

  // check -------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "test a dataset against an axiom");
  check->require_subcommand(1);
  const auto add_csv_check =
      [&](const char* name, const char* help,
          std::function<std::optional<ViolationWitness>(const PurchaseDataset&)> fn) {
        auto* cmd = check->add_subcommand(name, help);
        cmd->add_option("input", input_path, "purchase CSV")->required();
        arm(cmd, [&, fn = std::move(fn)] {
          const auto data = load_purchases(input_path);
          const auto witness = fn(data);
          return Outcome{verdict_of_witness(witness), witness ? kExitAxiomFail : kExitPass};
        });
        return cmd;
      };

  add_csv_check("garp", "no weak cycle with a strict edge",
                [](const PurchaseDataset& d) { return check_garp_like(build_rp(d)); });
  add_csv_check("warp", "no pairwise reversal",
                [](const PurchaseDataset& d) { return check_warp(build_rp(d)); });
  add_csv_check("sarp", "no cycle of distinct-bundle affordability",
                [](const PurchaseDataset& d) { return check_garp_like(build_s(d)); });
  add_csv_check("pacyclic", "no cycle of strict affordability",
                [](const PurchaseDataset& d) {
                  auto rel = build_rp(d);
                  rel.weak = rel.strict;
                  return check_garp_like(rel);
                });
  add_csv_check("gapp", "no price-preference cycle with a strict edge",
                [](const PurchaseDataset& d) { return check_garp_like(build_price_prefs(d)); });

  auto* egarp = check->add_subcommand("egarp", "acyclicity at a given efficiency parameter");
  egarp->add_option("--e", e_text, "efficiency parameter in (0,1]")->required();
  egarp->add_option("input", input_path, "purchase CSV")->required();
  arm(egarp, [&] {
    const auto data = load_purchases(input_path);
    const auto witness = check_egarp(data, parse_rational(e_text));
    return Outcome{verdict_of_witness(witness), witness ? kExitAxiomFail : kExitPass};
  });

  auto* diffpre = check->add_subcommand("diff-precondition", "screen for smooth rationalization");
  diffpre->add_option("input", input_path, "purchase CSV")->required();
  arm(diffpre, [&] {
    const auto result = check_differentiable_precondition(load_purchases(input_path));
    json report;
    switch (result.kind) {
      case DiffPrecondition::Kind::pass:
        report["verdict"] = "pass";
        return Outcome{report, kExitPass};
      case DiffPrecondition::Kind::acyclicity_violation:
        report["verdict"] = "fail";
        report["witness"] = json_of_witness(*result.witness);
        return Outcome{report, kExitAxiomFail};
      case DiffPrecondition::Kind::repeated_bundle:
        report["verdict"] = "fail";
        report["offending_pair"] = {result.offending_pair.first + 1,
                                    result.offending_pair.second + 1};
        return Outcome{report, kExitAxiomFail};
    }
    throw InternalCheckFailure("unreachable");
  });

  auto* congruence = check->add_subcommand("congruence", "choice-correspondence consistency");
  congruence->add_option("input", input_path, "choice JSON")->required();
  arm(congruence, [&] {
    const auto input = parse_choice_json(input_path);
    enforce_cap(input.data.observations(), "observation");
    enforce_cap(input.data.ground_size(), "ground element");
    const auto witness = check_congruence(input.data);
    return Outcome{verdict_of_witness(witness), witness ? kExitAxiomFail : kExitPass};
  });

  auto* order_garp = check->add_subcommand("order-garp", "dominance-order acyclicity");
  order_garp->add_option("--preorder", preorder_flag,
                         "identity | geq | impatience | fosd:p1,p2,... | JSON path");
  order_garp->add_option("input", input_path, "choice JSON")->required();
  arm(order_garp, [&] {
    const auto input = parse_choice_json(input_path);
    enforce_cap(input.data.observations(), "observation");
    enforce_cap(input.data.ground_size(), "ground element");
    const auto witness = check_order_garp(input.data, preorder_for(input, preorder_flag));
    return Outcome{verdict_of_witness(witness), witness ? kExitAxiomFail : kExitPass};
  });

  auto* mech = check->add_subcommand("mech", "contract implementability");
  mech->add_option("input", input_path, "mechanism JSON")->required();
  arm(mech, [&] {
    const auto data = parse_mechanism_json(input_path);
    enforce_cap(data.types(), "type");
    const auto witness = check_implementable(data);
    return Outcome{verdict_of_witness(witness), witness ? kExitAxiomFail : kExitPass};
  });

  // construct -----------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "build a rationalizing representation");
  construct->require_subcommand(1);

  auto* afriat = construct->add_subcommand("afriat", "utility levels and money weights");
  afriat->add_option("input", input_path, "purchase CSV")->required();
  arm(afriat, [&] {
    const auto data = load_purchases(input_path);
    const auto numbers = afriat_numbers(data);
    json report{{"verdict", "value"}, {"numbers", json_of_numbers(numbers)}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* sarp_cmd = construct->add_subcommand("sarp-numbers", "strict-margin levels and weights");
  sarp_cmd->add_option("input", input_path, "purchase CSV")->required();
  arm(sarp_cmd, [&] {
    const auto data = load_purchases(input_path);
    const auto numbers = sarp_numbers(data);
    json report{{"verdict", "value"}, {"numbers", json_of_numbers(numbers)}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* strict_utility =
      construct->add_subcommand("strict-utility", "strictly concave perturbed representation");
  strict_utility->add_option("input", input_path, "purchase CSV")->required();
  arm(strict_utility, [&] {
    const auto data = load_purchases(input_path);
    const auto numbers = sarp_numbers(data);
    const auto utility = strict_concave_utility(numbers, data);
    json report{{"verdict", "value"},
                {"numbers", json_of_numbers(numbers)},
                {"perturbation",
                 {{"epsilon", to_fraction(utility.perturbation->epsilon)},
                  {"t_param", to_fraction(utility.perturbation->t_param)}}}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* fm = construct->add_subcommand("fm", "levels and weights from an expenditure table");
  fm->add_option("--table", table_path, "expenditure-table JSON")->required();
  arm(fm, [&] {
    const auto table = parse_expenditure_json(table_path);
    enforce_cap(table.size(), "observation");
    const auto numbers = fm_numbers(table);
    json report{{"verdict", "value"}, {"numbers", json_of_numbers(numbers)}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* quasilinear = construct->add_subcommand("quasilinear", "divisible-good budget and prices");
  quasilinear->add_option("input", input_path, "purchase CSV")->required();
  arm(quasilinear, [&] {
    const auto data = load_purchases(input_path);
    const auto params = quasilinear_params(afriat_numbers(data), data);
    json report{{"verdict", "value"}, {"quasilinear", json_of_quasilinear(params)}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* order_utility =
      construct->add_subcommand("order-utility", "integer utility over the ground set");
  order_utility->add_option("--preorder", preorder_flag,
                            "identity | geq | impatience | fosd:p1,p2,... | JSON path");
  order_utility->add_option("input", input_path, "choice JSON")->required();
  arm(order_utility, [&] {
    const auto input = parse_choice_json(input_path);
    enforce_cap(input.data.observations(), "observation");
    enforce_cap(input.data.ground_size(), "ground element");
    const auto utility = order_rationalize(input.data, preorder_for(input, preorder_flag));
    json values;
    for (int i = 0; i < input.data.ground_size(); ++i) values[input.data.label(i)] = utility[i];
    json report{{"verdict", "value"}, {"utility", std::move(values)}};
    return Outcome{std::move(report), kExitPass};
  });

  auto* contract = construct->add_subcommand("contract", "linear contingent contract");
  contract->add_option("input", input_path, "mechanism JSON")->required();
  arm(contract, [&] {
    const auto data = parse_mechanism_json(input_path);
    enforce_cap(data.types(), "type");
    const auto contract_value = synthesize_linear_contract(data);
    json report{{"verdict", "value"}, {"contract", json_of_contract(contract_value)}};
    return Outcome{std::move(report), kExitPass};
  });

  // ccei ----------------------------------------------------------------
  auto* ccei = app.add_subcommand("ccei", "exact critical cost-efficiency index");
  ccei->add_option("input", input_path, "purchase CSV")->required();
  arm(ccei, [&] {
    const auto data = load_purchases(input_path);
    json report = json_of_ccei(compute_ccei(data));
    report["verdict"] = "value";
    return Outcome{std::move(report), kExitPass};
  });

  // generate ------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "synthetic maximizer dataset as CSV on stdout");
  GeneratorConfig cfg;
  std::string family = "cobb-douglas";
  std::string price_range = "1:10";
  std::string income_range = "5:50";
  gen->add_option("--family", family, "cobb-douglas | quasilinear | discrete-divisible")
      ->check(CLI::IsMember({"cobb-douglas", "quasilinear", "discrete-divisible"}));
  gen->add_option("--goods", cfg.goods, "number of goods");
  gen->add_option("--obs", cfg.observations, "number of observations");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_option("--e", e_text, "share of each budget spent optimally, in (0,1]");
  gen->add_option("--price-range", price_range, "lo:hi rationals");
  gen->add_option("--income-range", income_range, "lo:hi rationals");
  arm(gen, [&] {
    const auto parse_range = [](const std::string& text, Rational& lo, Rational& hi) {
      const auto colon = text.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("range must look like lo:hi");
      lo = parse_rational(text.substr(0, colon));
      hi = parse_rational(text.substr(colon + 1));
    };
    cfg.efficiency = parse_rational(e_text);
    parse_range(price_range, cfg.price_min, cfg.price_max);
    parse_range(income_range, cfg.income_min, cfg.income_max);
    if (family == "quasilinear") cfg.family = UtilityFamily::quasilinear;
    else if (family == "discrete-divisible") cfg.family = UtilityFamily::discrete_divisible;
    enforce_cap(cfg.observations, "observation");
    std::cout << to_csv(generate(cfg));
    return Outcome{json(), kExitPass};
  });

  CLI11_PARSE(app, argc, argv);

  json report;
  int code = kExitPass;
  const auto started = std::chrono::steady_clock::now();
  try {
    Outcome out = (*run)();
    report = std::move(out.report);
    code = out.exit_code;
  } catch (const AxiomViolation& e) {
    report["verdict"] = "fail";
    report["axiom"] = e.axiom();
    report["witness"] = json_of_witness(e.witness());
    code = kExitAxiomFail;
  } catch (const InternalCheckFailure& e) {
    report["verdict"] = "error";
    report["error"] = std::string("internal check failed: ") + e.what();
    code = kExitError;
  } catch (const std::exception& e) {
    report["verdict"] = "error";
    report["error"] = e.what();
    code = kExitError;
  }
  if (report.is_null()) {  // generate writes its own output
    std::cout.flush();
    return code;
  }

  const auto elapsed = std::chrono::steady_clock::now() - started;
  report["command"] = [&] {
    std::string name;
    for (const CLI::App* cmd = &app; !cmd->get_subcommands().empty();) {
      cmd = cmd->get_subcommands().front();
      name += (name.empty() ? "" : " ") + cmd->get_name();
    }
    return name;
  }();
  report["timing_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();

  if (format == "text") {
    render_text(report, std::cout);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  std::cout.flush();
  return code;
}
