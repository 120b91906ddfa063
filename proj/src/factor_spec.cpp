#include "noneq/factor_spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace noneq {

using nlohmann::json;

namespace {

const json& field(const json& spec, const char* key) {
  if (!spec.is_object() || !spec.contains(key)) throw std::invalid_argument(std::string("factor spec lacks \"") + key + "\"");
  return spec.at(key);
}

template <class T>
T get_as(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("factor spec field \"") + what + "\" has the wrong type");
  }
}

}  // namespace

std::shared_ptr<const FactorGroup> load_factor(const json& spec) {
  const auto type = get_as<std::string>(field(spec, "type"), "type");
  if (type == "table") {
    return std::make_shared<TableGroup>(get_as<std::string>(field(spec, "name"), "name"),
                                        get_as<std::vector<std::string>>(field(spec, "elements"), "elements"),
                                        get_as<std::vector<std::vector<std::size_t>>>(field(spec, "mul"), "mul"),
                                        get_as<std::vector<std::size_t>>(field(spec, "inv"), "inv"),
                                        get_as<std::size_t>(field(spec, "identity"), "identity"));
  }
  if (type == "free") {
    const json& rank = field(spec, "rank");
    std::optional<int> r;
    if (rank.is_string()) {
      if (rank.get<std::string>() != "omega") throw std::invalid_argument("free rank must be an integer or \"omega\"");
    } else {
      r = get_as<int>(rank, "rank");
    }
    return std::make_shared<FreeFactor>(r, get_as<std::string>(field(spec, "prefix"), "prefix"));
  }
  if (type == "product") return std::make_shared<CompositeFactor>(load_product(spec));
  throw std::invalid_argument("unknown factor type \"" + type + "\"");
}

std::shared_ptr<const FreeProductGroup> load_product(const json& spec) {
  if (get_as<std::string>(field(spec, "type"), "type") != "product") {
    throw std::invalid_argument("top-level factor spec must have type \"product\"");
  }
  std::vector<std::shared_ptr<const FactorGroup>> factors;
  for (const json& f : get_as<std::vector<json>>(field(spec, "factors"), "factors")) factors.push_back(load_factor(f));
  std::set<std::string> names;
  for (const auto& f : factors) {
    if (!names.insert(f->name()).second) throw std::invalid_argument("duplicate factor name \"" + f->name() + "\"");
  }
  std::vector<std::string> sides;
  if (spec.contains("sides")) sides = get_as<std::vector<std::string>>(spec.at("sides"), "sides");
  std::string name;
  if (spec.contains("name")) name = get_as<std::string>(spec.at("name"), "name");
  return std::make_shared<FreeProductGroup>(std::move(factors), std::move(sides), std::move(name));
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = line_column(text, offset);
    throw ParseError("invalid JSON", line, column);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

json to_spec(const FactorGroup& factor) {
  if (const auto* t = dynamic_cast<const TableGroup*>(&factor)) {
    return {{"type", "table"}, {"name", t->name()}, {"elements", t->element_names()}, {"mul", t->table()},
            {"inv", t->inverses()}, {"identity", t->identity_index()}};
  }
  if (const auto* f = dynamic_cast<const FreeFactor*>(&factor)) {
    json rank = f->rank() ? json(*f->rank()) : json("omega");
    return {{"type", "free"}, {"rank", rank}, {"prefix", f->prefix()}};
  }
  const auto& c = dynamic_cast<const CompositeFactor&>(factor);
  return to_spec(c.group());
}

json to_spec(const FreeProductGroup& group) {
  json factors = json::array();
  for (std::size_t i = 0; i < group.factor_count(); ++i) factors.push_back(to_spec(group.factor(i)));
  return {{"type", "product"}, {"name", group.name()}, {"sides", group.side_names()}, {"factors", factors}};
}

}  // namespace noneq
