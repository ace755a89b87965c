#pragma once

#include "yangc/ast.hpp"
#include "yangc/diagnostics.hpp"
#include "yangc/syntax.hpp"

namespace yangc {

/// Converts a parsed `module`/`submodule` tree into a Specification.
///
/// Never fails: every cardinality or placement problem is reported to
/// `diags`, the offending statement is left out, and building continues with
/// the next sibling. Unprefixed keywords that are not YANG statements are
/// errors; prefixed ones become ExtensionUse entries on the enclosing node.
Specification build(const RawStatement& raw, DiagnosticBag& diags);

/// Every keyword the builder understands.
bool is_builtin_keyword(std::string_view keyword);

}  // namespace yangc
