#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "revpref/abstract.hpp"
#include "revpref/afriat.hpp"
#include "revpref/dataset.hpp"
#include "revpref/efficiency.hpp"
#include "revpref/mechanism.hpp"

namespace revpref {

// Input problems (bad literals, schema violations, invariant failures on
// load) are reported through this type with a file/row or JSON-path location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& origin, const std::string& where, const std::string& message);
};

// CSV with header p1..pL,x1..xL; decimal or fraction literals; row order is
// observation order.
PurchaseDataset parse_purchase_csv_text(std::string_view text, const std::string& origin);
PurchaseDataset parse_purchase_csv(const std::string& path);
std::string to_csv(const PurchaseDataset& data);

struct ChoiceInput {
  ChoiceDataset data;
  std::optional<Preorder> preorder;
};

ChoiceInput parse_choice_json_text(std::string_view text, const std::string& origin);
ChoiceInput parse_choice_json(const std::string& path);
nlohmann::json choice_to_json(const ChoiceDataset& data);

MechanismDataset parse_mechanism_json_text(std::string_view text, const std::string& origin);
MechanismDataset parse_mechanism_json(const std::string& path);
nlohmann::json mechanism_to_json(const MechanismDataset& data);

ExpenditureTable parse_expenditure_json_text(std::string_view text, const std::string& origin);
ExpenditureTable parse_expenditure_json(const std::string& path);
nlohmann::json expenditure_to_json(const ExpenditureTable& table);

// Named preorder ("identity" | "geq" | "impatience" | "fosd:p1,p2,...") or a
// path to a JSON preorder object; validated against the dataset's ground set.
Preorder resolve_preorder(const std::string& name_or_path, const ChoiceDataset& data);

// Report fragments shared by the CLI and the serialization tests.  Witness
// indices are emitted 1-based.
nlohmann::json json_of_witness(const ViolationWitness& witness);
nlohmann::json json_of_numbers(const AfriatNumbers& numbers);
nlohmann::json json_of_contract(const LinearContract& contract);
nlohmann::json json_of_quasilinear(const QuasilinearParams& params);
nlohmann::json json_of_ccei(const CceiResult& result);

}  // namespace revpref
