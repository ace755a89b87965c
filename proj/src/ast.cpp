#include "yangc/ast.hpp"

namespace yangc {

std::string_view restriction_keyword(RestrictionKind kind) {
  switch (kind) {
    case RestrictionKind::Range: return "range";
    case RestrictionKind::Length: return "length";
    case RestrictionKind::Pattern: return "pattern";
    case RestrictionKind::Path: return "path";
    case RestrictionKind::BitWidth: return "bit-width";
  }
  return "";
}

std::string_view refine_keyword(RefineKind kind) {
  switch (kind) {
    case RefineKind::Container: return "container";
    case RefineKind::Leaf: return "leaf";
    case RefineKind::LeafList: return "leaf-list";
    case RefineKind::List: return "list";
    case RefineKind::Choice: return "choice";
    case RefineKind::Case: return "case";
    case RefineKind::AnyXml: return "anyxml";
  }
  return "";
}

const SourceSpan& DataDef::span() const {
  return std::visit([](const auto& n) -> const SourceSpan& { return n.span; }, node);
}

std::string_view DataDef::name() const {
  return std::visit(
      [](const auto& n) -> std::string_view {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Uses>) {
          return n.grouping;
        } else if constexpr (std::is_same_v<T, Augment>) {
          return n.target.value;
        } else {
          return n.name;
        }
      },
      node);
}

std::string_view DataDef::keyword() const {
  static constexpr std::string_view kNames[] = {"container", "leaf",   "leaf-list", "list",
                                                "choice",    "anyxml", "uses",      "augment"};
  return kNames[node.index()];
}

std::string_view CaseArm::name() const {
  if (const auto* c = std::get_if<Case>(&arm)) return c->name;
  return std::get<Box<DataDef>>(arm)->name();
}

const SourceSpan& CaseArm::span() const {
  if (const auto* c = std::get_if<Case>(&arm)) return c->span;
  return std::get<Box<DataDef>>(arm)->span();
}

std::string Specification::owner() const {
  if (const auto* sub = std::get_if<SubmoduleHeader>(&header)) {
    return sub->belongs_to ? sub->belongs_to->value : std::string{};
  }
  return name;
}

std::optional<std::string> Specification::own_prefix() const {
  if (const auto* mod = std::get_if<ModuleHeader>(&header)) {
    if (mod->prefix) return mod->prefix->value;
    return std::nullopt;
  }
  const auto& sub = std::get<SubmoduleHeader>(header);
  if (sub.belongs_to_prefix) return sub.belongs_to_prefix->value;
  return std::nullopt;
}

std::optional<std::string> Specification::namespace_uri() const {
  if (const auto* mod = std::get_if<ModuleHeader>(&header)) {
    if (mod->namespace_uri) return mod->namespace_uri->value;
  }
  return std::nullopt;
}

}  // namespace yangc
