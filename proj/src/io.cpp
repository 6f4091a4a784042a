#include "revpref/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace revpref {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "", "cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  for (std::string& field : out) {
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.erase(field.begin());
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.pop_back();
  }
  return out;
}

Rational json_rational(const json& j, const std::string& origin, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(origin, where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
  throw ParseError(origin, where, "expected a rational as a string or integer");
}

const json& member(const json& j, const char* key, const std::string& origin, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(origin, where, std::string("missing member '") + key + "'");
  return j.at(key);
}

json parse_json_text(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin, "", e.what());
  }
}

std::vector<std::vector<Rational>> parse_matrix(const json& j, const std::string& origin,
                                                const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(origin, where, "expected a non-empty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    const std::string row_path = where + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ParseError(origin, row_path, "expected an array");
    std::vector<Rational> values;
    for (size_t c = 0; c < row.size(); ++c) {
      values.push_back(json_rational(row[c], origin, row_path + "[" + std::to_string(c) + "]"));
    }
    rows.push_back(std::move(values));
  }
  return rows;
}

Preorder preorder_from_json(const json& j, const ChoiceDataset& data, const std::string& origin,
                            const std::string& where);

}  // namespace

ParseError::ParseError(const std::string& origin, const std::string& where, const std::string& message)
    : std::runtime_error(origin + (where.empty() ? "" : " (" + where + ")") + ": " + message) {}

PurchaseDataset parse_purchase_csv_text(std::string_view text, const std::string& origin) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    std::string_view line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = pos + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(origin, "", "empty file");

  const std::vector<std::string> header = split(lines[0], ',');
  if (header.size() < 2 || header.size() % 2 != 0)
    throw ParseError(origin, "row 1", "header must list p1..pL,x1..xL");
  const size_t goods = header.size() / 2;
  for (size_t l = 0; l < goods; ++l) {
    if (header[l] != "p" + std::to_string(l + 1) || header[goods + l] != "x" + std::to_string(l + 1))
      throw ParseError(origin, "row 1", "header must list p1..pL,x1..xL");
  }

  std::vector<Bundle> bundles;
  std::vector<PriceVector> prices;
  for (size_t r = 1; r < lines.size(); ++r) {
    const std::string where = "row " + std::to_string(r + 1);
    if (lines[r].empty()) throw ParseError(origin, where, "empty row");
    const std::vector<std::string> fields = split(lines[r], ',');
    if (fields.size() != header.size())
      throw ParseError(origin, where, "expected " + std::to_string(header.size()) + " fields");
    PriceVector p;
    Bundle x;
    for (size_t l = 0; l < goods; ++l) {
      Rational price, quantity;
      try {
        price = parse_rational(fields[l]);
        quantity = parse_rational(fields[goods + l]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(origin, where, e.what());
      }
      if (price <= 0) throw ParseError(origin, where, "non-positive price p" + std::to_string(l + 1));
      if (quantity < 0) throw ParseError(origin, where, "negative quantity x" + std::to_string(l + 1));
      p.prices.push_back(std::move(price));
      x.quantities.push_back(std::move(quantity));
    }
    prices.push_back(std::move(p));
    bundles.push_back(std::move(x));
  }
  if (bundles.empty()) throw ParseError(origin, "", "no observations");
  return PurchaseDataset(std::move(bundles), std::move(prices));
}

PurchaseDataset parse_purchase_csv(const std::string& path) {
  return parse_purchase_csv_text(read_file(path), path);
}

std::string to_csv(const PurchaseDataset& data) {
  std::ostringstream out;
  const int goods = data.goods();
  for (int l = 0; l < goods; ++l) out << (l ? "," : "") << "p" << l + 1;
  for (int l = 0; l < goods; ++l) out << ",x" << l + 1;
  out << "\n";
  for (int t = 0; t < data.observations(); ++t) {
    for (int l = 0; l < goods; ++l) out << (l ? "," : "") << to_fraction(data.prices(t).prices[l]);
    for (int l = 0; l < goods; ++l) out << "," << to_fraction(data.bundle(t).quantities[l]);
    out << "\n";
  }
  return out.str();
}

namespace {

Preorder preorder_from_json(const json& j, const ChoiceDataset& data, const std::string& origin,
                            const std::string& where) {
  const int n = data.ground_size();
  Preorder p;

  if (j.is_object() && j.contains("name")) {
    const std::string name = member(j, "name", origin, where).get<std::string>();
    if (name == "identity") {
      p = identity_preorder(n);
    } else if (name == "geq") {
      p = componentwise_geq_preorder(data.coordinate_payloads());
    } else if (name == "impatience") {
      p = impatience_preorder(data.coordinate_payloads(2));
    } else if (name == "fosd") {
      const json& pi = member(j, "pi", origin, where);
      if (!pi.is_array()) throw ParseError(origin, where + ".pi", "expected an array");
      std::vector<Rational> probs;
      for (size_t i = 0; i < pi.size(); ++i) {
        probs.push_back(json_rational(pi[i], origin, where + ".pi[" + std::to_string(i) + "]"));
      }
      try {
        p = fosd_preorder(data.coordinate_payloads(static_cast<int>(probs.size())), probs);
      } catch (const std::invalid_argument& e) {
        throw ParseError(origin, where, e.what());
      }
    } else {
      throw ParseError(origin, where, "unknown preorder '" + name + "'");
    }
  } else if (j.is_object() && j.contains("matrix")) {
    const json& rows = j.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw ParseError(origin, where + ".matrix", "expected one row per ground element");
    p.relation = BoolMatrix(n);
    for (int a = 0; a < n; ++a) {
      if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != n)
        throw ParseError(origin, where + ".matrix", "expected a square matrix");
      for (int b = 0; b < n; ++b) {
        const json& cell = rows[a][b];
        bool value;
        if (cell.is_boolean()) value = cell.get<bool>();
        else if (cell.is_number_integer()) value = cell.get<int64_t>() != 0;
        else throw ParseError(origin, where + ".matrix", "entries must be booleans or 0/1");
        if (value) p.relation.set(a, b);
      }
    }
  } else if (j.is_object() && j.contains("edges")) {
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[data.label(i)] = i;
    p.relation = BoolMatrix(n);
    for (int i = 0; i < n; ++i) p.relation.set(i, i);
    const json& edges = j.at("edges");
    if (!edges.is_array()) throw ParseError(origin, where + ".edges", "expected an array of pairs");
    for (size_t i = 0; i < edges.size(); ++i) {
      const std::string edge_path = where + ".edges[" + std::to_string(i) + "]";
      const json& edge = edges[i];
      if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string())
        throw ParseError(origin, edge_path, "expected a pair of labels");
      const auto a = index.find(edge[0].get<std::string>());
      const auto b = index.find(edge[1].get<std::string>());
      if (a == index.end() || b == index.end())
        throw ParseError(origin, edge_path, "unknown label");
      p.relation.set(a->second, b->second);
    }
  } else {
    throw ParseError(origin, where, "preorder needs 'name', 'matrix', or 'edges'");
  }

  if (auto failure = validate_preorder(p)) {
    std::string what;
    switch (failure->kind) {
      case PreorderFailure::Kind::not_square: what = "not square"; break;
      case PreorderFailure::Kind::not_reflexive:
        what = "not reflexive at '" + data.label(failure->a) + "'";
        break;
      case PreorderFailure::Kind::not_transitive:
        what = "not transitive over ('" + data.label(failure->a) + "', '" + data.label(failure->b) +
               "', '" + data.label(failure->c) + "')";
        break;
    }
    throw ParseError(origin, where, "invalid preorder: " + what);
  }
  return p;
}

}  // namespace

ChoiceInput parse_choice_json_text(std::string_view text, const std::string& origin) {
  const json root = parse_json_text(text, origin);
  const json& ground = member(root, "ground", origin, "");
  if (!ground.is_array() || ground.empty())
    throw ParseError(origin, "ground", "expected a non-empty array");

  std::vector<std::string> labels;
  std::vector<std::optional<Bundle>> coords;
  std::map<std::string, int> index;
  for (size_t i = 0; i < ground.size(); ++i) {
    const std::string where = "ground[" + std::to_string(i) + "]";
    const json& element = ground[i];
    std::string label;
    std::optional<Bundle> payload;
    if (element.is_string()) {
      label = element.get<std::string>();
    } else if (element.is_object()) {
      label = member(element, "label", origin, where).get<std::string>();
      if (element.contains("coords")) {
        const json& cs = element.at("coords");
        if (!cs.is_array()) throw ParseError(origin, where + ".coords", "expected an array");
        Bundle b;
        for (size_t l = 0; l < cs.size(); ++l) {
          b.quantities.push_back(json_rational(cs[l], origin, where + ".coords[" + std::to_string(l) + "]"));
        }
        payload = std::move(b);
      }
    } else {
      throw ParseError(origin, where, "expected a label or an object");
    }
    if (index.contains(label)) throw ParseError(origin, where, "duplicate label '" + label + "'");
    index[label] = static_cast<int>(labels.size());
    labels.push_back(std::move(label));
    coords.push_back(std::move(payload));
  }

  const json& observations = member(root, "observations", origin, "");
  if (!observations.is_array() || observations.empty())
    throw ParseError(origin, "observations", "expected a non-empty array");
  std::vector<ChoiceObservation> obs;
  for (size_t t = 0; t < observations.size(); ++t) {
    const std::string where = "observations[" + std::to_string(t) + "]";
    ChoiceObservation o;
    for (const char* key : {"chosen", "budget"}) {
      const json& arr = member(observations[t], key, origin, where);
      if (!arr.is_array() || arr.empty())
        throw ParseError(origin, where + "." + key, "expected a non-empty array of labels");
      for (size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string())
          throw ParseError(origin, where + "." + key, "expected labels");
        const auto found = index.find(arr[i].get<std::string>());
        if (found == index.end())
          throw ParseError(origin, where + "." + key, "unknown label '" + arr[i].get<std::string>() + "'");
        (key[0] == 'c' ? o.chosen : o.budget).push_back(found->second);
      }
    }
    for (int c : o.chosen) {
      if (std::find(o.budget.begin(), o.budget.end(), c) == o.budget.end())
        throw ParseError(origin, where, "chosen element outside its budget");
    }
    obs.push_back(std::move(o));
  }

  ChoiceInput input{ChoiceDataset(std::move(labels), std::move(coords), std::move(obs)), std::nullopt};
  if (root.contains("preorder"))
    input.preorder = preorder_from_json(root.at("preorder"), input.data, origin, "preorder");
  return input;
}

ChoiceInput parse_choice_json(const std::string& path) {
  return parse_choice_json_text(read_file(path), path);
}

json choice_to_json(const ChoiceDataset& data) {
  json ground = json::array();
  for (int i = 0; i < data.ground_size(); ++i) {
    json element;
    element["label"] = data.label(i);
    if (data.coords(i)) {
      json cs = json::array();
      for (const Rational& q : data.coords(i)->quantities) cs.push_back(to_fraction(q));
      element["coords"] = std::move(cs);
    }
    ground.push_back(std::move(element));
  }
  json observations = json::array();
  for (int t = 0; t < data.observations(); ++t) {
    json o;
    for (int c : data.observation(t).chosen) o["chosen"].push_back(data.label(c));
    for (int b : data.observation(t).budget) o["budget"].push_back(data.label(b));
    observations.push_back(std::move(o));
  }
  return json{{"ground", std::move(ground)}, {"observations", std::move(observations)}};
}

MechanismDataset parse_mechanism_json_text(std::string_view text, const std::string& origin) {
  const json root = parse_json_text(text, origin);
  auto rows = parse_matrix(member(root, "payoff", origin, ""), origin, "payoff");
  try {
    return MechanismDataset(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin, "payoff", e.what());
  }
}

MechanismDataset parse_mechanism_json(const std::string& path) {
  return parse_mechanism_json_text(read_file(path), path);
}

json mechanism_to_json(const MechanismDataset& data) {
  json rows = json::array();
  for (int t = 0; t < data.types(); ++t) {
    json row = json::array();
    for (int s = 0; s < data.types(); ++s) row.push_back(to_fraction(data.payoff(t, s)));
    rows.push_back(std::move(row));
  }
  return json{{"payoff", std::move(rows)}};
}

ExpenditureTable parse_expenditure_json_text(std::string_view text, const std::string& origin) {
  const json root = parse_json_text(text, origin);
  auto rows = parse_matrix(member(root, "values", origin, ""), origin, "values");
  try {
    return ExpenditureTable(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin, "values", e.what());
  }
}

ExpenditureTable parse_expenditure_json(const std::string& path) {
  return parse_expenditure_json_text(read_file(path), path);
}

json expenditure_to_json(const ExpenditureTable& table) {
  json rows = json::array();
  for (int t = 0; t < table.size(); ++t) {
    json row = json::array();
    for (int s = 0; s < table.size(); ++s) row.push_back(to_fraction(table.at(t, s)));
    rows.push_back(std::move(row));
  }
  return json{{"values", std::move(rows)}};
}

Preorder resolve_preorder(const std::string& name_or_path, const ChoiceDataset& data) {
  const std::string& selector = name_or_path;
  if (selector == "identity" || selector == "geq" || selector == "impatience") {
    return preorder_from_json(json{{"name", selector}}, data, "--preorder", "");
  }
  if (selector.starts_with("fosd:")) {
    json pi = json::array();
    for (const std::string& field : split(selector.substr(5), ',')) pi.push_back(field);
    return preorder_from_json(json{{"name", "fosd"}, {"pi", std::move(pi)}}, data, "--preorder", "");
  }
  const json root = parse_json_text(read_file(selector), selector);
  const json& p = root.is_object() && root.contains("preorder") ? root.at("preorder") : root;
  return preorder_from_json(p, data, selector, "preorder");
}

json json_of_witness(const ViolationWitness& witness) {
  json cycle = json::array();
  for (int t : witness.cycle) cycle.push_back(t + 1);
  return json{{"cycle", std::move(cycle)},
              {"strict_edge", {witness.strict_edge.first + 1, witness.strict_edge.second + 1}}};
}

json json_of_numbers(const AfriatNumbers& numbers) {
  json u = json::array(), lambda = json::array(), levels = json::array();
  for (const Rational& v : numbers.u) u.push_back(to_fraction(v));
  for (const Rational& v : numbers.lambda) lambda.push_back(to_fraction(v));
  for (int v : numbers.levels) levels.push_back(v);
  return json{{"u", std::move(u)}, {"lambda", std::move(lambda)}, {"levels", std::move(levels)},
              {"strict", numbers.strict_margin}};
}

json json_of_contract(const LinearContract& contract) {
  json u = json::array(), lambda = json::array();
  for (const Rational& v : contract.u) u.push_back(to_fraction(v));
  for (const Rational& v : contract.lambda) lambda.push_back(to_fraction(v));
  return json{{"u", std::move(u)}, {"lambda", std::move(lambda)}};
}

json json_of_quasilinear(const QuasilinearParams& params) {
  json q = json::array();
  for (const Rational& v : params.q) q.push_back(to_fraction(v));
  return json{{"m", to_fraction(params.m)}, {"q", std::move(q)}};
}

json json_of_ccei(const CceiResult& result) {
  json breakpoints = json::array();
  for (const Rational& b : result.breakpoints) breakpoints.push_back(to_fraction(b));
  json out{{"value", to_fraction(result.value)},
           {"breakpoints", std::move(breakpoints)},
           {"attained", result.attained}};
  if (result.failing_witness_above) out["failing_witness_above"] = json_of_witness(*result.failing_witness_above);
  return out;
}

}  // namespace revpref
