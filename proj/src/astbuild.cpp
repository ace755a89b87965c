#include "yangc/astbuild.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <unordered_set>

#include "yangc/lexer.hpp"

namespace yangc {

namespace {

constexpr std::array kKeywords = {
    "anyxml",      "argument",  "augment",       "belongs-to",   "case",       "choice",
    "config",      "contact",   "container",     "default",      "description", "enum",
    "error-app-tag", "error-message", "extension", "grouping",     "import",     "include",
    "input",       "key",       "leaf",          "leaf-list",    "length",     "list",
    "mandatory",   "max-elements", "min-elements", "module",     "must",       "namespace",
    "notification", "ordered-by", "organization", "output",      "path",       "pattern",
    "prefix",      "presence",  "range",         "reference",    "revision",   "rpc",
    "status",      "submodule", "type",          "typedef",      "unique",     "units",
    "uses",        "value",     "when",          "yang-version", "yin-element",
};

bool is_datadef_keyword(std::string_view k) {
  return k == "container" || k == "leaf" || k == "leaf-list" || k == "list" || k == "choice" ||
         k == "anyxml" || k == "uses" || k == "augment";
}

bool is_short_case_keyword(std::string_view k) {
  return k == "container" || k == "leaf" || k == "leaf-list" || k == "list" || k == "anyxml";
}

bool is_non_negative_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_date(std::string_view s) {
  static const std::regex kDate(R"(\d{4}-\d{2}-\d{2})");
  return std::regex_match(s.begin(), s.end(), kDate);
}

class Builder {
 public:
  explicit Builder(DiagnosticBag& diags) : diags_(diags) {}

  Specification run(const RawStatement& raw) {
    Specification spec;
    spec.span = raw.span;
    spec.name = raw.argument.value_or("");
    const bool is_module = raw.keyword == "module";
    spec.kind = is_module ? SpecKind::Module : SpecKind::Submodule;
    if (!raw.argument || !is_identifier(*raw.argument)) {
      diags_.error(DiagCode::InvalidArgument, raw.span,
                   "'" + raw.keyword + "' requires an identifier argument");
    }
    if (is_module) {
      spec.header = ModuleHeader{};
    } else {
      spec.header = SubmoduleHeader{};
    }

    for_children(raw, spec.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "yang-version") {
        return std::visit([&](auto& h) { return once(c, h.yang_version); }, spec.header);
      }
      if (is_module && (k == "namespace" || k == "prefix")) {
        auto& h = std::get<ModuleHeader>(spec.header);
        return once(c, k == "namespace" ? h.namespace_uri : h.prefix, k == "prefix");
      }
      if (!is_module && k == "belongs-to") return belongs_to(c, std::get<SubmoduleHeader>(spec.header));
      if (k == "organization") return once(c, spec.organization);
      if (k == "contact") return once(c, spec.contact);
      if (k == "description") return once(c, spec.description);
      if (k == "reference") return once(c, spec.reference);
      if (k == "import") return push(import(c), spec.imports);
      if (k == "include") return push(include(c), spec.includes);
      if (k == "revision") return push(revision(c), spec.revisions);
      return body(c, spec.bodies);
    });

    if (is_module) {
      const auto& h = std::get<ModuleHeader>(spec.header);
      if (!h.namespace_uri || !h.prefix) {
        std::string missing = !h.namespace_uri && !h.prefix ? "'namespace' and 'prefix'"
                              : !h.namespace_uri           ? "'namespace'"
                                                           : "'prefix'";
        diags_.error(DiagCode::MissingNamespaceOrPrefix, raw.span,
                     "module '" + spec.name + "' must declare " + missing);
      }
    } else if (!std::get<SubmoduleHeader>(spec.header).belongs_to) {
      diags_.error(DiagCode::MissingSubstatement, raw.span,
                   "submodule '" + spec.name + "' must contain a 'belongs-to' statement");
    }
    if (spec.revisions.empty()) {
      diags_.warning(DiagCode::MissingRevision, raw.span,
                     "'" + spec.name + "' should contain at least one revision statement");
    }
    spec.source = prune(raw);
    return spec;
  }

 private:
  // ---- generic helpers -------------------------------------------------

  template <class Handler>
  void for_children(const RawStatement& parent, std::vector<ExtensionUse>& extensions, Handler&& handle) {
    for (const auto& c : parent.children) {
      if (c.has_prefix()) {
        extensions.push_back(extension_use(c));
        continue;
      }
      if (!handle(c)) reject(parent, c);
    }
  }

  void reject(const RawStatement& parent, const RawStatement& child) {
    if (!is_builtin_keyword(child.keyword)) {
      diags_.error(DiagCode::UnknownStatement, child.span, "unknown statement '" + child.keyword + "'");
    } else {
      diags_.error(DiagCode::MisplacedSubstatement, child.span,
                   "'" + child.keyword + "' is not allowed in '" + parent.keyword + "'");
    }
    drop(child);
  }

  void drop(const RawStatement& s) { dropped_.insert(&s); }

  template <class T>
  bool push(std::optional<T> value, std::vector<T>& out) {
    if (value) out.push_back(std::move(*value));
    return true;
  }

  ExtensionUse extension_use(const RawStatement& s) {
    return ExtensionUse{std::string(s.prefix()), std::string(s.local_name()), s.argument, s, s.span};
  }

  // Statements with an argument and no substatements other than extensions.
  std::optional<Arg> simple_arg(const RawStatement& s) {
    if (!s.argument) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'" + s.keyword + "' requires an argument");
      drop(s);
      return std::nullopt;
    }
    for (const auto& c : s.children) {
      if (!c.has_prefix()) reject(s, c);
    }
    return Arg{*s.argument, s.span};
  }

  bool duplicate(const RawStatement& s) {
    diags_.error(DiagCode::DuplicateSubstatement, s.span,
                 "'" + s.keyword + "' can occur at most once here");
    drop(s);
    return true;
  }

  bool once(const RawStatement& s, OptArg& field, bool identifier = false) {
    if (field) return duplicate(s);
    auto arg = simple_arg(s);
    if (!arg) return true;
    if (identifier && !is_identifier(arg->value)) {
      diags_.error(DiagCode::InvalidArgument, s.span,
                   "'" + s.keyword + "' argument '" + arg->value + "' is not an identifier");
      drop(s);
      return true;
    }
    field = std::move(arg);
    return true;
  }

  bool once_bool(const RawStatement& s, std::optional<bool>& field) {
    if (field) return duplicate(s);
    auto arg = simple_arg(s);
    if (!arg) return true;
    if (arg->value != "true" && arg->value != "false") {
      diags_.error(DiagCode::InvalidArgument, s.span,
                   "'" + s.keyword + "' must be \"true\" or \"false\", found \"" + arg->value + "\"");
      drop(s);
      return true;
    }
    field = arg->value == "true";
    return true;
  }

  // Boolean statement whose text is kept as written.
  bool once_flag_text(const RawStatement& s, OptArg& field) {
    std::optional<bool> parsed;
    if (field) return duplicate(s);
    once_bool(s, parsed);
    if (parsed) field = Arg{*s.argument, s.span};
    return true;
  }

  bool once_choice(const RawStatement& s, OptArg& field, std::initializer_list<std::string_view> allowed) {
    if (field) return duplicate(s);
    auto arg = simple_arg(s);
    if (!arg) return true;
    if (std::find(allowed.begin(), allowed.end(), arg->value) == allowed.end()) {
      diags_.error(DiagCode::InvalidArgument, s.span,
                   "invalid '" + s.keyword + "' value \"" + arg->value + "\"");
      drop(s);
      return true;
    }
    field = std::move(arg);
    return true;
  }

  bool status(const RawStatement& s, OptArg& field) {
    return once_choice(s, field, {"current", "deprecated", "obsolete"});
  }

  bool element_count(const RawStatement& s, OptArg& field, bool allow_unbounded) {
    if (field) return duplicate(s);
    auto arg = simple_arg(s);
    if (!arg) return true;
    if (!is_non_negative_integer(arg->value) && !(allow_unbounded && arg->value == "unbounded")) {
      diags_.error(DiagCode::InvalidArgument, s.span,
                   "'" + s.keyword + "' requires a non-negative integer, found \"" + arg->value + "\"");
      drop(s);
      return true;
    }
    field = std::move(arg);
    return true;
  }

  // Definition statements take an identifier as their name.
  bool named(const RawStatement& s, std::string& name) {
    if (!s.argument || !is_identifier(*s.argument)) {
      diags_.error(DiagCode::InvalidArgument, s.span,
                   "'" + s.keyword + "' requires an identifier argument" +
                       (s.argument ? ", found \"" + *s.argument + "\"" : std::string{}));
      drop(s);
      return false;
    }
    name = *s.argument;
    return true;
  }

  template <class T>
  std::optional<T> missing(const RawStatement& s, std::string_view what) {
    diags_.error(DiagCode::MissingSubstatement, s.span,
                 "'" + s.keyword + (s.argument ? " " + *s.argument : std::string{}) + "' must contain " +
                     std::string(what));
    drop(s);
    return std::nullopt;
  }

  RawStatement prune(const RawStatement& s) const {
    RawStatement out{s.keyword, s.argument, {}, s.span};
    for (const auto& c : s.children) {
      if (!dropped_.count(&c)) out.children.push_back(prune(c));
    }
    return out;
  }

  // ---- linkage and header ---------------------------------------------

  bool belongs_to(const RawStatement& s, SubmoduleHeader& h) {
    if (h.belongs_to) return duplicate(s);
    std::string name;
    if (!named(s, name)) return true;
    OptArg prefix;
    std::vector<ExtensionUse> ignored;
    for_children(s, ignored, [&](const RawStatement& c) {
      if (c.keyword == "prefix") return once(c, prefix, true);
      return false;
    });
    h.belongs_to = Arg{name, s.span};
    h.belongs_to_prefix = std::move(prefix);
    return true;
  }

  std::optional<Import> import(const RawStatement& s) {
    Import n;
    n.span = s.span;
    if (!named(s, n.module)) return std::nullopt;
    OptArg prefix;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      if (c.keyword == "prefix") return once(c, prefix, true);
      return false;
    });
    if (!prefix) return missing<Import>(s, "a 'prefix' statement");
    n.prefix = std::move(*prefix);
    return n;
  }

  std::optional<Include> include(const RawStatement& s) {
    Include n;
    n.span = s.span;
    if (!named(s, n.submodule)) return std::nullopt;
    for_children(s, n.extensions, [](const RawStatement&) { return false; });
    return n;
  }

  std::optional<Revision> revision(const RawStatement& s) {
    Revision n;
    n.span = s.span;
    if (!s.argument || !is_date(*s.argument)) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'revision' requires a date argument (YYYY-MM-DD)");
      drop(s);
      return std::nullopt;
    }
    n.date = *s.argument;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      if (c.keyword == "description") return once(c, n.description);
      return false;
    });
    return n;
  }

  // ---- bodies ------------------------------------------------------------

  bool body(const RawStatement& c, std::vector<Body>& out) {
    const auto& k = c.keyword;
    if (k == "extension") {
      if (auto n = extension(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    if (k == "typedef") {
      if (auto n = typedef_stmt(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    if (k == "grouping") {
      if (auto n = grouping(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    if (k == "rpc") {
      if (auto n = rpc(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    if (k == "notification") {
      if (auto n = notification(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    if (is_datadef_keyword(k)) {
      if (auto n = datadef(c)) out.push_back(Body{std::move(*n)});
      return true;
    }
    return false;
  }

  std::optional<Extension> extension(const RawStatement& s) {
    Extension n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "argument") {
        if (n.argument) return duplicate(c);
        n.argument = argument_decl(c);
        return true;
      }
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  std::optional<ArgumentDecl> argument_decl(const RawStatement& s) {
    ArgumentDecl n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      if (c.keyword == "yin-element") return once_bool(c, n.yin_element);
      return false;
    });
    return n;
  }

  std::optional<Typedef> typedef_stmt(const RawStatement& s) {
    Typedef n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    bool has_type = false;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "type") return type_once(c, n.type, has_type);
      if (k == "units") return once(c, n.units);
      if (k == "default") return once(c, n.default_value);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    if (!has_type) return missing<Typedef>(s, "a 'type' statement");
    return n;
  }

  bool type_once(const RawStatement& s, TypeSpec& field, bool& seen) {
    if (seen) return duplicate(s);
    if (auto t = type_spec(s)) {
      field = std::move(*t);
      seen = true;
    }
    return true;
  }

  std::optional<TypeSpec> type_spec(const RawStatement& s) {
    TypeSpec n;
    n.span = s.span;
    if (!s.argument) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'type' requires a type name");
      drop(s);
      return std::nullopt;
    }
    static const std::regex kWidth(R"((\S+) \((\d+)\))");
    std::smatch m;
    if (std::regex_match(*s.argument, m, kWidth)) {
      n.name = m[1].str();
      RestrictionStmt width;
      width.kind = RestrictionKind::BitWidth;
      width.argument = m[2].str();
      width.span = s.span;
      n.restriction = std::move(width);
    } else {
      n.name = *s.argument;
    }
    if (!is_identifier(n.name) && !is_prefixed_identifier(n.name)) {
      diags_.error(DiagCode::InvalidArgument, s.span, "invalid type name \"" + *s.argument + "\"");
      drop(s);
      return std::nullopt;
    }
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "enum") {
        if (n.restriction) {
          diags_.error(DiagCode::MisplacedSubstatement, c.span,
                       "a type has either enum statements or one restriction, not both");
          drop(c);
          return true;
        }
        return push(enum_spec(c), n.enums);
      }
      if (k == "range" || k == "length" || k == "pattern" || k == "path") {
        if (!n.enums.empty()) {
          diags_.error(DiagCode::MisplacedSubstatement, c.span,
                       "a type has either enum statements or one restriction, not both");
          drop(c);
          return true;
        }
        if (n.restriction) {
          diags_.error(DiagCode::DuplicateSubstatement, c.span, "a type allows only one restriction statement");
          drop(c);
          return true;
        }
        n.restriction = restriction(c);
        return true;
      }
      return false;
    });
    return n;
  }

  std::optional<RestrictionStmt> restriction(const RawStatement& s) {
    RestrictionStmt n;
    n.span = s.span;
    if (!s.argument) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'" + s.keyword + "' requires an argument");
      drop(s);
      return std::nullopt;
    }
    n.argument = *s.argument;
    const auto& k = s.keyword;
    n.kind = k == "range"    ? RestrictionKind::Range
             : k == "length" ? RestrictionKind::Length
             : k == "pattern" ? RestrictionKind::Pattern
                              : RestrictionKind::Path;
    const bool documented = n.kind != RestrictionKind::Path;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      if (!documented) return false;
      const auto& ck = c.keyword;
      if (ck == "error-message") return once(c, n.error_message);
      if (ck == "error-app-tag") return once(c, n.error_app_tag);
      if (ck == "description") return once(c, n.description);
      if (ck == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  std::optional<EnumSpec> enum_spec(const RawStatement& s) {
    EnumSpec n;
    n.span = s.span;
    if (!s.argument || s.argument->empty()) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'enum' requires a name");
      drop(s);
      return std::nullopt;
    }
    n.name = *s.argument;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "value") return once(c, n.value);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  std::optional<Must> must(const RawStatement& s) {
    Must n;
    n.span = s.span;
    if (!s.argument) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'must' requires an expression");
      drop(s);
      return std::nullopt;
    }
    n.condition = *s.argument;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "error-message") return once(c, n.error_message);
      if (k == "error-app-tag") return once(c, n.error_app_tag);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  bool unique(const RawStatement& s, std::vector<Arg>& out) {
    if (auto a = simple_arg(s)) out.push_back(std::move(*a));
    return true;
  }

  // typedef / grouping / datadef children shared by several blocks.
  bool scoped_member(const RawStatement& c, std::vector<Typedef>& typedefs, std::vector<Grouping>& groupings,
                     std::vector<DataDef>& datadefs) {
    const auto& k = c.keyword;
    if (k == "typedef") return push(typedef_stmt(c), typedefs);
    if (k == "grouping") return push(grouping(c), groupings);
    if (is_datadef_keyword(k)) return push(datadef(c), datadefs);
    return false;
  }

  std::optional<Grouping> grouping(const RawStatement& s) {
    Grouping n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    return n;
  }

  std::optional<Rpc> rpc(const RawStatement& s) {
    Rpc n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "input" || k == "output") {
        auto& slot = k == "input" ? n.input : n.output;
        if (slot) return duplicate(c);
        slot = io_block(c);
        return true;
      }
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    return n;
  }

  std::optional<IoBlock> io_block(const RawStatement& s) {
    IoBlock n;
    n.span = s.span;
    if (s.argument) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'" + s.keyword + "' takes no argument");
      drop(s);
      return std::nullopt;
    }
    for_children(s, n.extensions, [&](const RawStatement& c) {
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    return n;
  }

  std::optional<Notification> notification(const RawStatement& s) {
    Notification n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    return n;
  }

  // ---- data definitions --------------------------------------------------

  std::optional<DataDef> datadef(const RawStatement& s) {
    const auto& k = s.keyword;
    if (k == "container") return wrap(container(s));
    if (k == "leaf") return wrap(leaf(s));
    if (k == "leaf-list") return wrap(leaf_list(s));
    if (k == "list") return wrap(list(s));
    if (k == "choice") return wrap(choice(s));
    if (k == "anyxml") return wrap(anyxml(s));
    if (k == "uses") return wrap(uses(s));
    return wrap(augment(s));
  }

  template <class T>
  static std::optional<DataDef> wrap(std::optional<T> node) {
    if (!node) return std::nullopt;
    return DataDef{std::move(*node)};
  }

  std::optional<Container> container(const RawStatement& s) {
    Container n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "must") return push(must(c), n.musts);
      if (k == "presence") return once_flag_text(c, n.presence);
      if (k == "config") return once_bool(c, n.config);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    return n;
  }

  std::optional<Leaf> leaf(const RawStatement& s) {
    Leaf n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    bool has_type = false;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "type") return type_once(c, n.type, has_type);
      if (k == "must") return push(must(c), n.musts);
      if (k == "units") return once(c, n.units);
      if (k == "default") return once(c, n.default_value);
      if (k == "config") return once_bool(c, n.config);
      if (k == "mandatory") return once_bool(c, n.mandatory);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    if (!has_type) return missing<Leaf>(s, "a 'type' statement");
    return n;
  }

  std::optional<LeafList> leaf_list(const RawStatement& s) {
    LeafList n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    bool has_type = false;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "type") return type_once(c, n.type, has_type);
      if (k == "must") return push(must(c), n.musts);
      if (k == "units") return once(c, n.units);
      if (k == "default") return once(c, n.default_value);
      if (k == "config") return once_bool(c, n.config);
      if (k == "min-elements") return element_count(c, n.min_elements, false);
      if (k == "max-elements") return element_count(c, n.max_elements, true);
      if (k == "mandatory") return once_bool(c, n.mandatory);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    if (!has_type) return missing<LeafList>(s, "a 'type' statement");
    return n;
  }

  std::optional<ListNode> list(const RawStatement& s) {
    ListNode n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    bool saw_datadef = false;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "must") return push(must(c), n.musts);
      if (k == "unique") return unique(c, n.uniques);
      if (k == "key") return once(c, n.key);
      if (k == "min-elements") return element_count(c, n.min_elements, false);
      if (k == "max-elements") return element_count(c, n.max_elements, true);
      if (k == "ordered-by") return once_choice(c, n.ordered_by, {"system", "user"});
      if (k == "config") return once_bool(c, n.config);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      if (is_datadef_keyword(k)) saw_datadef = true;
      return scoped_member(c, n.typedefs, n.groupings, n.datadefs);
    });
    if (!saw_datadef) {
      diags_.error(DiagCode::ListWithoutDataDef, s.span,
                   "list '" + n.name + "' must contain at least one data definition");
      drop(s);
      return std::nullopt;
    }
    if (n.datadefs.empty()) {
      // Every data definition was rejected and already reported.
      drop(s);
      return std::nullopt;
    }
    return n;
  }

  std::optional<Choice> choice(const RawStatement& s) {
    Choice n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "case") {
        if (auto arm = case_stmt(c)) n.arms.push_back(CaseArm{std::move(*arm)});
        return true;
      }
      if (is_short_case_keyword(k)) {
        if (auto d = datadef(c)) n.arms.push_back(CaseArm{Box<DataDef>(std::move(*d))});
        return true;
      }
      if (k == "default") return once(c, n.default_value);
      if (k == "mandatory") return once_bool(c, n.mandatory);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  std::optional<Case> case_stmt(const RawStatement& s) {
    Case n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      if (is_datadef_keyword(k)) return push(datadef(c), n.datadefs);
      return false;
    });
    return n;
  }

  std::optional<AnyXml> anyxml(const RawStatement& s) {
    AnyXml n;
    n.span = s.span;
    if (!named(s, n.name)) return std::nullopt;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "config") return once_bool(c, n.config);
      if (k == "mandatory") return once_bool(c, n.mandatory);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      return false;
    });
    return n;
  }

  std::optional<Uses> uses(const RawStatement& s) {
    Uses n;
    n.span = s.span;
    if (!s.argument || (!is_identifier(*s.argument) && !is_prefixed_identifier(*s.argument))) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'uses' requires a grouping name");
      drop(s);
      return std::nullopt;
    }
    n.grouping = *s.argument;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      if (auto kind = refine_kind(k); kind && *kind != RefineKind::Case) {
        return push(refinement(c, *kind), n.refinements);
      }
      return false;
    });
    return n;
  }

  static std::optional<RefineKind> refine_kind(std::string_view k) {
    if (k == "container") return RefineKind::Container;
    if (k == "leaf") return RefineKind::Leaf;
    if (k == "leaf-list") return RefineKind::LeafList;
    if (k == "list") return RefineKind::List;
    if (k == "choice") return RefineKind::Choice;
    if (k == "case") return RefineKind::Case;
    if (k == "anyxml") return RefineKind::AnyXml;
    return std::nullopt;
  }

  std::optional<Refinement> refinement(const RawStatement& s, RefineKind kind) {
    Refinement n;
    n.span = s.span;
    n.kind = kind;
    if (!named(s, n.target)) return std::nullopt;
    const bool container_like = kind == RefineKind::Container || kind == RefineKind::List;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      switch (kind) {
        case RefineKind::Container:
          if (k == "presence") return once_flag_text(c, n.presence);
          break;
        case RefineKind::Leaf:
          if (k == "default") return once(c, n.default_value);
          break;
        case RefineKind::LeafList:
        case RefineKind::List:
          if (k == "min-elements") return element_count(c, n.min_elements, false);
          if (k == "max-elements") return element_count(c, n.max_elements, true);
          break;
        case RefineKind::Choice:
          if (k == "default") return once(c, n.default_value);
          if (k == "mandatory") return once_bool(c, n.mandatory);
          if (k == "case") return push(refinement(c, RefineKind::Case), n.children);
          break;
        case RefineKind::AnyXml:
          if (k == "mandatory") return once_bool(c, n.mandatory);
          break;
        case RefineKind::Case:
          break;
      }
      const bool has_must_config = kind != RefineKind::Choice && kind != RefineKind::Case;
      if (has_must_config && kind != RefineKind::AnyXml && k == "must") return push(must(c), n.musts);
      if (has_must_config && k == "config") return once_bool(c, n.config);
      if (container_like || kind == RefineKind::Case) {
        if (auto child = refine_kind(k); child && *child != RefineKind::Case) {
          return push(refinement(c, *child), n.children);
        }
      }
      return false;
    });
    return n;
  }

  std::optional<Augment> augment(const RawStatement& s) {
    Augment n;
    n.span = s.span;
    if (!s.argument || s.argument->empty()) {
      diags_.error(DiagCode::InvalidArgument, s.span, "'augment' requires a target node path");
      drop(s);
      return std::nullopt;
    }
    n.target = Arg{*s.argument, s.span};
    bool saw_payload = false;
    for_children(s, n.extensions, [&](const RawStatement& c) {
      const auto& k = c.keyword;
      if (k == "when") return once(c, n.when);
      if (k == "status") return status(c, n.status);
      if (k == "description") return once(c, n.description);
      if (k == "reference") return once(c, n.reference);
      if (k == "case") {
        saw_payload = true;
        return push(case_stmt(c), n.cases);
      }
      if (k == "input" || k == "output") {
        saw_payload = true;
        auto& slot = k == "input" ? n.input : n.output;
        if (slot) return duplicate(c);
        slot = io_block(c);
        return true;
      }
      if (is_datadef_keyword(k)) {
        saw_payload = true;
        return push(datadef(c), n.datadefs);
      }
      return false;
    });
    if (!saw_payload) {
      return missing<Augment>(s, "at least one data definition, case, input or output statement");
    }
    return n;
  }

  DiagnosticBag& diags_;
  std::unordered_set<const RawStatement*> dropped_;
};

}  // namespace

bool is_builtin_keyword(std::string_view keyword) {
  return std::find(kKeywords.begin(), kKeywords.end(), keyword) != kKeywords.end();
}

Specification build(const RawStatement& raw, DiagnosticBag& diags) { return Builder(diags).run(raw); }

}  // namespace yangc
