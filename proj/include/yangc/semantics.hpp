#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yangc/ast.hpp"
#include "yangc/diagnostics.hpp"
#include "yangc/resolver.hpp"
#include "yangc/typesystem.hpp"

namespace yangc {

enum class NodeKind { Module, Container, Leaf, LeafList, List, Choice, Case, AnyXml, Rpc, Input, Output, Notification };

std::string_view node_kind_name(NodeKind kind);

/// One node of the resolved data hierarchy.
struct SchemaNode {
  std::string name;
  NodeKind kind = NodeKind::Container;
  // Module whose namespace the node belongs to.
  std::string module;
  bool config = true;
  bool config_explicit = false;
  SchemaNode* parent = nullptr;
  std::vector<std::unique_ptr<SchemaNode>> children;
  // Statement the node was instantiated from. An implicit case (short case
  // form) points to its single data definition.
  std::variant<std::monostate, const Container*, const Leaf*, const LeafList*, const ListNode*, const Choice*,
               const Case*, const AnyXml*, const Rpc*, const IoBlock*, const Notification*, const DataDef*>
      origin;
  SourceSpan span;
  // Leaf and leaf-list only; empty when the type did not resolve.
  std::optional<ResolvedType> type;
  // Values after refinement.
  std::optional<std::string> default_value;
  std::optional<std::string> presence;
  std::optional<std::string> min_elements;
  std::optional<std::string> max_elements;
  std::optional<bool> mandatory;
  std::vector<const Must*> musts;
  // Specification whose prefixes apply to paths written for this node.
  const Specification* context = nullptr;

  const SchemaNode* child(std::string_view child_name) const;
  /// True for choice and case, which do not appear in data.
  bool is_transparent() const { return kind == NodeKind::Choice || kind == NodeKind::Case; }
};

/// Resolved hierarchy of every loaded module, keyed by module name.
struct SchemaTree {
  std::map<std::string, std::unique_ptr<SchemaNode>> roots;
  // Keeps the ASTs that SchemaNode::origin points into alive.
  std::vector<std::shared_ptr<const Specification>> sources;

  const SchemaNode* root(std::string_view module) const;
};

/// Indented `kind name [: base-type]` lines for a subtree, for comparing
/// trees structurally.
std::string dump(const SchemaNode& node, int depth = 0);

/// Slash-separated node path, optionally absolute, with optional prefixes.
/// `..` steps and `[...]` predicates are accepted; predicates are dropped.
struct SchemaNodeId {
  struct Step {
    std::string prefix;
    std::string name;
    bool up = false;

    friend bool operator==(const Step&, const Step&) = default;
  };
  bool absolute = false;
  std::vector<Step> steps;

  friend bool operator==(const SchemaNodeId&, const SchemaNodeId&) = default;
};

std::optional<SchemaNodeId> parse_schema_node_id(std::string_view text);

/// How names in a path are interpreted.
struct PathContext {
  const SchemaTree* tree = nullptr;
  // prefix -> module, as in ModuleRegistry::prefix_tables.
  const std::map<std::string, std::string>* prefixes = nullptr;
  // Module that unprefixed steps bind to.
  std::string module;
};

struct PathError {
  std::size_t step = 0;
  std::string message;
};

/// Resolves `path` from `context` (relative) or from the root of the first
/// step's module (absolute). Choice and case nodes are looked through unless
/// a step names them.
std::variant<const SchemaNode*, PathError> resolve_schema_node(const SchemaNodeId& path, const SchemaNode& context,
                                                              const PathContext& ctx);

/// Key components of a list node must name distinct direct leaf children.
void check_list_keys(const SchemaNode& list, DiagnosticBag& diags);
/// Each unique component must name a leaf below the list; no repeats.
void check_unique(const SchemaNode& list, const PathContext& ctx, DiagnosticBag& diags);

struct CheckResult {
  DiagnosticBag diagnostics;
  SchemaTree tree;
};

/// Checks every specification in `registry` and builds the schema tree.
/// Diagnostics are reported once per (code, span, message).
CheckResult check(const ModuleRegistry& registry);

}  // namespace yangc
