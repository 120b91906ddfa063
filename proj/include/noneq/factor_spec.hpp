#pragma once

// JSON factor specifications:
//
//   {"type":"table","name":s,"elements":[names],"mul":[[index]],"inv":[index],"identity":index}
//   {"type":"free","rank":n|"omega","prefix":s}
//   {"type":"product","factors":[specs], "name":s?, "sides":[names]?}

#include <filesystem>
#include <memory>
#include <string_view>

#include "json.hpp"
#include "noneq/free_product.hpp"

namespace noneq {

/// Throws std::invalid_argument on schema or validation failures.
std::shared_ptr<const FactorGroup> load_factor(const nlohmann::json& spec);

/// The spec must be a product; its factors become the product's factors.
std::shared_ptr<const FreeProductGroup> load_product(const nlohmann::json& spec);

/// Parses JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json to_spec(const FactorGroup& factor);
nlohmann::json to_spec(const FreeProductGroup& group);

}  // namespace noneq
