#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yangc/diagnostics.hpp"
#include "yangc/syntax.hpp"

namespace yangc {

/// Heap-allocated value with deep-copy semantics, for recursive variants.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

/// Statement argument with the span of the statement that carried it.
struct Arg {
  std::string value;
  SourceSpan span;
};
using OptArg = std::optional<Arg>;

/// Use of an extension keyword (`myext:c-define "X";`). The content is
/// opaque and kept verbatim.
struct ExtensionUse {
  std::string prefix;
  std::string name;
  std::optional<std::string> argument;
  RawStatement raw;
  SourceSpan span;
};

struct NodeBase {
  SourceSpan span;
  std::vector<ExtensionUse> extensions;
};

struct Must : NodeBase {
  std::string condition;
  OptArg error_message, error_app_tag, description, reference;
};

struct EnumSpec : NodeBase {
  std::string name;
  OptArg value, status, description, reference;
};

enum class RestrictionKind { Range, Length, Pattern, Path, BitWidth };
std::string_view restriction_keyword(RestrictionKind kind);

/// The restriction statement as written; parsed by the type system.
struct RestrictionStmt : NodeBase {
  RestrictionKind kind = RestrictionKind::Range;
  std::string argument;
  OptArg error_message, error_app_tag, description, reference;
};

/// `type name;` possibly with enums or one restriction (never both).
struct TypeSpec : NodeBase {
  std::string name;
  std::vector<EnumSpec> enums;
  std::optional<RestrictionStmt> restriction;
};

struct ArgumentDecl : NodeBase {
  std::string name;
  std::optional<bool> yin_element;
};

struct Extension : NodeBase {
  std::string name;
  std::optional<ArgumentDecl> argument;
  OptArg status, description, reference;
};

struct Typedef : NodeBase {
  std::string name;
  TypeSpec type;
  OptArg units, default_value, status, description, reference;
};

struct DataDef;
struct Grouping;
struct CaseArm;

struct Container : NodeBase {
  std::string name;
  std::vector<Must> musts;
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
  OptArg presence, status, description, reference;
  std::optional<bool> config;
};

struct Leaf : NodeBase {
  std::string name;
  TypeSpec type;
  std::vector<Must> musts;
  OptArg units, default_value, status, description, reference;
  std::optional<bool> config, mandatory;
};

struct LeafList : NodeBase {
  std::string name;
  TypeSpec type;
  std::vector<Must> musts;
  OptArg units, default_value, min_elements, max_elements, status, description, reference;
  std::optional<bool> config, mandatory;
};

struct ListNode : NodeBase {
  std::string name;
  std::vector<Must> musts;
  std::vector<Arg> uniques;
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
  OptArg key, min_elements, max_elements, ordered_by, status, description, reference;
  std::optional<bool> config;
};

struct Choice : NodeBase {
  std::string name;
  std::vector<CaseArm> arms;
  OptArg default_value, status, description, reference;
  std::optional<bool> mandatory;
};

struct AnyXml : NodeBase {
  std::string name;
  OptArg status, description, reference;
  std::optional<bool> config, mandatory;
};

enum class RefineKind { Container, Leaf, LeafList, List, Choice, Case, AnyXml };
std::string_view refine_keyword(RefineKind kind);

/// Refinement inside `uses`, addressed by node kind and name. Which fields
/// may be set depends on the kind; the builder rejects the others.
struct Refinement : NodeBase {
  RefineKind kind = RefineKind::Leaf;
  std::string target;
  std::vector<Must> musts;
  OptArg default_value, presence, min_elements, max_elements, description, reference;
  std::optional<bool> config, mandatory;
  std::vector<Refinement> children;
};

struct Uses : NodeBase {
  std::string grouping;
  OptArg status, description, reference;
  std::vector<Refinement> refinements;
};

struct Case : NodeBase {
  std::string name;
  std::vector<DataDef> datadefs;
  OptArg status, description, reference;
};

/// `input` / `output` block.
struct IoBlock : NodeBase {
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
};

struct Augment : NodeBase {
  Arg target;
  std::vector<DataDef> datadefs;
  std::vector<Case> cases;
  std::optional<IoBlock> input, output;
  OptArg when, status, description, reference;
};

struct DataDef {
  std::variant<Container, Leaf, LeafList, ListNode, Choice, AnyXml, Uses, Augment> node;

  const SourceSpan& span() const;
  /// Node name; for uses the grouping reference, for augment the target.
  std::string_view name() const;
  std::string_view keyword() const;
};

struct CaseArm {
  // The short form holds one container, leaf, leaf-list, list or anyxml.
  std::variant<Case, Box<DataDef>> arm;

  std::string_view name() const;
  const SourceSpan& span() const;
};

struct Grouping : NodeBase {
  std::string name;
  OptArg status, description, reference;
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
};

struct Rpc : NodeBase {
  std::string name;
  std::optional<IoBlock> input, output;
  OptArg status, description, reference;
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
};

struct Notification : NodeBase {
  std::string name;
  OptArg status, description, reference;
  std::vector<Typedef> typedefs;
  std::vector<Grouping> groupings;
  std::vector<DataDef> datadefs;
};

struct Body {
  std::variant<Extension, Typedef, Grouping, DataDef, Rpc, Notification> node;
};

struct Import : NodeBase {
  std::string module;
  Arg prefix;
};

struct Include : NodeBase {
  std::string submodule;
};

struct Revision : NodeBase {
  std::string date;
  OptArg description;
};

struct ModuleHeader {
  OptArg yang_version;
  OptArg namespace_uri;
  OptArg prefix;
};

struct SubmoduleHeader {
  OptArg yang_version;
  OptArg belongs_to;
  // Optional `belongs-to x { prefix p; }` form.
  OptArg belongs_to_prefix;
};

enum class SpecKind { Module, Submodule };

/// Typed module or submodule.
struct Specification {
  SpecKind kind = SpecKind::Module;
  std::string name;
  SourceSpan span;
  std::variant<ModuleHeader, SubmoduleHeader> header;
  OptArg organization, contact, description, reference;
  std::vector<Import> imports;
  std::vector<Include> includes;
  std::vector<Revision> revisions;
  std::vector<Body> bodies;
  std::vector<ExtensionUse> extensions;
  // The statement tree the AST was built from, minus every block the
  // builder rejected.
  RawStatement source;

  const std::string& file() const { return span.file; }
  bool is_module() const { return kind == SpecKind::Module; }
  /// The module this specification belongs to (itself for a module).
  std::string owner() const;
  /// Prefix that refers to this specification's own module, if declared.
  std::optional<std::string> own_prefix() const;
  std::optional<std::string> namespace_uri() const;
};

}  // namespace yangc
