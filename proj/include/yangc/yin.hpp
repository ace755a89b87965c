#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "yangc/ast.hpp"
#include "yangc/resolver.hpp"

namespace yangc {

inline constexpr std::string_view kYinNamespace = "urn:ietf:params:xml:ns:yang:yin:1";

/// How a built-in statement's argument appears in YIN.
struct YinArgument {
  std::string_view name;
  // Child element `<name>arg</name>` when true, attribute `name="arg"`
  // otherwise.
  bool element = false;
};

/// nullopt for keywords that take no argument (input, output) and for
/// keywords that are not built in.
std::optional<YinArgument> yin_argument(std::string_view keyword);

struct YinOptions {
  std::string yin_namespace{kYinNamespace};
  // Supplies namespaces of imported modules and the argument declarations
  // of extensions defined elsewhere. Optional.
  const ModuleRegistry* registry = nullptr;
};

/// Renders the statement tree of `spec` as a YIN document: UTF-8, two-space
/// indentation, LF line endings.
///
/// Extension uses keep their prefixed name. Their argument becomes a child
/// element when the extension declares `yin-element true`, and an attribute
/// named after the declared argument otherwise (`value` when the extension
/// cannot be found).
std::string emit_yin(const Specification& spec, const YinOptions& options = {});

/// Namespace URI used for an import whose module is not available.
std::string unresolved_namespace(std::string_view module);

}  // namespace yangc
