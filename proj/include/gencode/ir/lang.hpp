#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gencode::ir {

enum class Lang { JavaLite, PyLite };

std::string_view lang_name(Lang lang);  // "java" / "python"
std::optional<Lang> parse_lang(std::string_view name);

}  // namespace gencode::ir
