#include "yangc/semantics.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace yangc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

std::string local_part(const std::string& name) {
  const auto colon = name.find(':');
  return colon == std::string::npos ? name : name.substr(colon + 1);
}

std::string location(const SourceSpan& span) {
  return span.file + ":" + std::to_string(span.start_line) + ":" + std::to_string(span.start_col);
}

// Nearest ancestor that appears in data (skips choice and case).
SchemaNode* data_parent(SchemaNode* node) {
  SchemaNode* p = node ? node->parent : nullptr;
  while (p && p->is_transparent()) p = p->parent;
  return p;
}

SchemaNode* find_step(SchemaNode& node, std::string_view name, std::string_view module, bool nested) {
  for (auto& c : node.children) {
    if (c->name == name && c->module == module && (!nested || c->kind != NodeKind::Case)) return c.get();
  }
  for (auto& c : node.children) {
    if (!c->is_transparent()) continue;
    if (auto* found = find_step(*c, name, module, true)) return found;
  }
  return nullptr;
}

std::string candidates(const SchemaNode& node) {
  std::vector<std::string> names;
  for (const auto& c : node.children) names.push_back(c->name);
  if (names.empty()) return "it has no children";
  std::string out = "candidates: ";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

std::variant<SchemaNode*, PathError> resolve_mutable(const SchemaNodeId& path, SchemaNode& context,
                                                     const PathContext& ctx) {
  auto module_of = [&](const SchemaNodeId::Step& step) -> std::optional<std::string> {
    if (step.prefix.empty()) return ctx.module;
    if (!ctx.prefixes) return std::nullopt;
    auto it = ctx.prefixes->find(step.prefix);
    if (it == ctx.prefixes->end()) return std::nullopt;
    return it->second;
  };
  SchemaNode* current = &context;
  std::size_t index = 0;
  if (path.absolute) {
    if (path.steps.empty() || path.steps.front().up) return PathError{0, "an absolute path cannot start with '..'"};
    auto module = module_of(path.steps.front());
    if (!module) return PathError{0, "unknown prefix '" + path.steps.front().prefix + "'"};
    const auto* root = ctx.tree ? ctx.tree->root(*module) : nullptr;
    if (!root) return PathError{0, "module '" + *module + "' is not loaded"};
    current = const_cast<SchemaNode*>(root);
  }
  for (; index < path.steps.size(); ++index) {
    const auto& step = path.steps[index];
    if (step.up) {
      SchemaNode* up = current->kind == NodeKind::Module ? nullptr : data_parent(current);
      if (!up) return PathError{index, "'..' leads above the module root"};
      current = up;
      continue;
    }
    auto module = module_of(step);
    if (!module) return PathError{index, "unknown prefix '" + step.prefix + "'"};
    SchemaNode* next = find_step(*current, step.name, *module, false);
    if (!next) {
      return PathError{index, "no node '" + step.name + "' under " + std::string(node_kind_name(current->kind)) +
                                  " '" + current->name + "' (" + candidates(*current) + ")"};
    }
    current = next;
  }
  return current;
}

}  // namespace

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Module: return "module";
    case NodeKind::Container: return "container";
    case NodeKind::Leaf: return "leaf";
    case NodeKind::LeafList: return "leaf-list";
    case NodeKind::List: return "list";
    case NodeKind::Choice: return "choice";
    case NodeKind::Case: return "case";
    case NodeKind::AnyXml: return "anyxml";
    case NodeKind::Rpc: return "rpc";
    case NodeKind::Input: return "input";
    case NodeKind::Output: return "output";
    case NodeKind::Notification: return "notification";
  }
  return "";
}

const SchemaNode* SchemaNode::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

const SchemaNode* SchemaTree::root(std::string_view module) const {
  auto it = roots.find(std::string(module));
  return it == roots.end() ? nullptr : it->second.get();
}

std::string dump(const SchemaNode& node, int depth) {
  std::string out(static_cast<std::size_t>(depth) * 2, ' ');
  out += std::string(node_kind_name(node.kind)) + " " + node.name;
  if (node.type) out += " : " + std::string(base_type_name(node.type->base));
  out += '\n';
  for (const auto& c : node.children) out += dump(*c, depth + 1);
  return out;
}

std::optional<SchemaNodeId> parse_schema_node_id(std::string_view text) {
  std::string cleaned;
  int depth = 0;
  for (char c : text) {
    if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (depth == 0) return std::nullopt;
      --depth;
    } else if (depth == 0 && c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      cleaned += c;
    }
  }
  if (depth != 0 || cleaned.empty()) return std::nullopt;
  SchemaNodeId id;
  std::size_t start = 0;
  if (cleaned.front() == '/') {
    id.absolute = true;
    start = 1;
  }
  while (start <= cleaned.size()) {
    auto slash = cleaned.find('/', start);
    if (slash == std::string::npos) slash = cleaned.size();
    const std::string step = cleaned.substr(start, slash - start);
    if (step.empty()) return std::nullopt;
    SchemaNodeId::Step s;
    if (step == "..") {
      s.up = true;
    } else if (is_identifier(step)) {
      s.name = step;
    } else if (is_prefixed_identifier(step)) {
      const auto colon = step.find(':');
      s.prefix = step.substr(0, colon);
      s.name = step.substr(colon + 1);
    } else {
      return std::nullopt;
    }
    id.steps.push_back(std::move(s));
    start = slash + 1;
  }
  return id;
}

std::variant<const SchemaNode*, PathError> resolve_schema_node(const SchemaNodeId& path, const SchemaNode& context,
                                                              const PathContext& ctx) {
  auto result = resolve_mutable(path, const_cast<SchemaNode&>(context), ctx);
  if (auto* error = std::get_if<PathError>(&result)) return *error;
  return std::get<SchemaNode*>(result);
}

void check_list_keys(const SchemaNode& list, DiagnosticBag& diags) {
  const auto* const* origin = std::get_if<const ListNode*>(&list.origin);
  if (!origin || !(*origin)->key) return;
  const auto& key = *(*origin)->key;
  std::set<std::string> seen;
  for (const auto& word : split_words(key.value)) {
    const auto name = local_part(word);
    if (!seen.insert(name).second) {
      diags.error(DiagCode::DuplicateKeyComponent, key.span,
                  "key component '" + name + "' appears more than once in list '" + list.name + "'");
      continue;
    }
    const SchemaNode* leaf = list.child(name);
    if (!leaf) {
      diags.error(DiagCode::KeyLeafNotFound, key.span,
                  "list '" + list.name + "' has no leaf '" + name + "' for its key");
    } else if (leaf->kind != NodeKind::Leaf) {
      diags.error(DiagCode::KeyLeafNotFound, key.span,
                  "key component '" + name + "' of list '" + list.name + "' is a " +
                      std::string(node_kind_name(leaf->kind)) + ", not a leaf");
    }
  }
}

void check_unique(const SchemaNode& list, const PathContext& ctx, DiagnosticBag& diags) {
  const auto* const* origin = std::get_if<const ListNode*>(&list.origin);
  if (!origin) return;
  for (const auto& unique : (*origin)->uniques) {
    std::set<std::string> seen;
    for (const auto& word : split_words(unique.value)) {
      if (!seen.insert(word).second) {
        diags.error(DiagCode::DuplicateUniqueComponent, unique.span,
                    "unique component '" + word + "' appears more than once");
        continue;
      }
      auto id = parse_schema_node_id(word);
      if (!id || id->absolute) {
        diags.error(DiagCode::UniqueComponentNotFound, unique.span,
                    "unique component '" + word + "' is not a descendant path");
        continue;
      }
      auto resolved = resolve_schema_node(*id, list, ctx);
      if (auto* error = std::get_if<PathError>(&resolved)) {
        diags.error(DiagCode::UniqueComponentNotFound, unique.span,
                    "unique component '" + word + "' not found: " + error->message);
        continue;
      }
      const auto* node = std::get<const SchemaNode*>(resolved);
      if (node->kind != NodeKind::Leaf) {
        diags.error(DiagCode::UniqueComponentNotALeaf, unique.span,
                    "unique component '" + word + "' is a " + std::string(node_kind_name(node->kind)) +
                        ", not a leaf");
      }
    }
  }
}

namespace {

class Checker;

// One lexical level of typedef and grouping declarations.
struct Frame final : TypeScope {
  const Checker* checker = nullptr;
  const Frame* parent = nullptr;
  const Specification* spec = nullptr;
  std::map<std::string, const Typedef*> typedefs;
  std::map<std::string, const Grouping*> groupings;

  TypedefLookup find_typedef(std::string_view name) const override;
};

template <class T>
struct Found {
  const T* def = nullptr;
  const Frame* frame = nullptr;
  bool unknown_prefix = false;
};

struct Ctx {
  const Frame* frame = nullptr;
  // Namespace of the nodes being created.
  std::string module;
  // Set while adding the top-level nodes of an augment payload.
  bool augment_top = false;

  Ctx nested(const Frame* f) const { return Ctx{f, module, false}; }
};

class Checker {
 public:
  explicit Checker(const ModuleRegistry& registry) : registry_(registry), types_(diags_) {}

  CheckResult run() {
    CheckResult result;
    for (const auto& [name, spec] : registry_.specs) {
      result.tree.sources.push_back(spec);
      top_frame(*spec);
    }
    collect_groups();
    for (const auto* spec : checked_) define_bodies(*spec);
    for (const auto& [grouping, frame] : groupings_) check_grouping(*grouping, *frame);
    for (const auto& group : groups_) instantiate_group(group);
    apply_augments();
    check_lists();
    check_keyrefs();
    check_choice_defaults();
    for (const auto* spec : checked_) check_extensions(*spec, spec->source);

    std::set<std::tuple<DiagCode, std::string, std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t, std::string>>
        seen;
    for (const auto& d : diags_.items()) {
      if (seen.emplace(d.code, d.span.file, d.span.start_line, d.span.start_col, d.span.end_line, d.span.end_col,
                       d.message)
              .second) {
        result.diagnostics.report(d);
      }
    }
    result.tree.roots = std::move(tree_.roots);
    return result;
  }

  // ---- scope lookup -----------------------------------------------------

  // Group of specifications a prefix refers to from `spec`; nullopt when the
  // prefix is not bound.
  std::optional<std::vector<const Specification*>> prefix_group(const Specification& spec,
                                                                std::string_view prefix) const {
    auto module = registry_.module_for_prefix(spec.name, prefix);
    if (!module) return std::nullopt;
    if (registry_.find(*module)) return registry_.group(*module);
    if (*module == spec.owner()) return registry_.group(spec.name);
    return std::vector<const Specification*>{};
  }

  template <class T>
  Found<T> lookup(const Frame& frame, std::string_view name,
                  const std::map<std::string, const T*> Frame::*table) const {
    Found<T> out;
    const auto colon = name.find(':');
    if (colon != std::string_view::npos) {
      auto group = prefix_group(*frame.spec, name.substr(0, colon));
      if (!group) {
        out.unknown_prefix = true;
        return out;
      }
      return lookup_in_group<T>(*group, std::string(name.substr(colon + 1)), table);
    }
    const std::string key(name);
    for (const Frame* f = &frame; f; f = f->parent) {
      auto it = (f->*table).find(key);
      if (it != (f->*table).end()) return {it->second, f, false};
    }
    return lookup_in_group<T>(registry_.group(frame.spec->name), key, table);
  }

  template <class T>
  Found<T> lookup_in_group(const std::vector<const Specification*>& group, const std::string& name,
                           const std::map<std::string, const T*> Frame::*table) const {
    for (const auto* member : group) {
      auto it = top_frames_.find(member);
      if (it == top_frames_.end()) continue;
      const Frame& top = *it->second;
      auto found = (top.*table).find(name);
      if (found != (top.*table).end()) return {found->second, &top, false};
    }
    return {};
  }

  Found<Typedef> find_typedef(const Frame& frame, std::string_view name) const {
    return lookup<Typedef>(frame, name, &Frame::typedefs);
  }

  Found<Grouping> find_grouping(const Frame& frame, std::string_view name) const {
    return lookup<Grouping>(frame, name, &Frame::groupings);
  }

 private:
  // ---- frames -------------------------------------------------------------

  Frame& top_frame(const Specification& spec) {
    if (auto it = top_frames_.find(&spec); it != top_frames_.end()) return *it->second;
    auto frame = std::make_unique<Frame>();
    frame->checker = this;
    frame->spec = &spec;
    for (const auto& body : spec.bodies) {
      if (const auto* t = std::get_if<Typedef>(&body.node)) declare(frame->typedefs, *t, "typedef");
      if (const auto* g = std::get_if<Grouping>(&body.node)) declare(frame->groupings, *g, "grouping");
      if (const auto* e = std::get_if<Extension>(&body.node)) {
        auto& table = extensions_[&spec];
        if (!table.emplace(e->name, e).second) {
          diags_.error(DiagCode::DuplicateDefinition, e->span,
                       "extension '" + e->name + "' is already defined at " + location(table[e->name]->span));
        }
      }
    }
    auto& ref = *frame;
    top_frames_.emplace(&spec, std::move(frame));
    return ref;
  }

  const Frame* frame_for(const void* key, const Frame* parent, const std::vector<Typedef>& typedefs,
                         const std::vector<Grouping>& groupings) {
    if (typedefs.empty() && groupings.empty()) return parent;
    if (auto it = frames_.find(key); it != frames_.end()) return it->second.get();
    auto frame = std::make_unique<Frame>();
    frame->checker = this;
    frame->parent = parent;
    frame->spec = parent->spec;
    for (const auto& t : typedefs) declare(frame->typedefs, t, "typedef");
    for (const auto& g : groupings) declare(frame->groupings, g, "grouping");
    const Frame* out = frame.get();
    frames_.emplace(key, std::move(frame));
    return out;
  }

  template <class T>
  void declare(std::map<std::string, const T*>& table, const T& def, std::string_view what) {
    auto [it, inserted] = table.emplace(def.name, &def);
    if (!inserted) {
      diags_.error(DiagCode::DuplicateDefinition, def.span,
                   std::string(what) + " '" + def.name + "' is already defined at " + location(it->second->span));
    }
  }

  // ---- module groups -------------------------------------------------------

  void collect_groups() {
    std::set<const Specification*> covered;
    auto add = [&](const std::string& leader) {
      auto group = registry_.group(leader);
      if (group.empty() || covered.count(group.front())) return;
      for (const auto* s : group) {
        if (covered.insert(s).second) checked_.push_back(s);
      }
      groups_.push_back(std::move(group));
    };
    for (const auto& name : registry_.module_names()) add(name);
    if (const auto* root = registry_.find(registry_.root); root && !covered.count(root)) add(root->name);
  }

  // ---- definitions -----------------------------------------------------

  void define_bodies(const Specification& spec) {
    const Frame& top = top_frame(spec);
    for (const auto& body : spec.bodies) {
      std::visit(Overloaded{
                     [&](const Extension&) {},
                     [&](const Typedef& t) { types_.resolve_typedef(t, top); },
                     [&](const Grouping& g) { define_grouping(g, top); },
                     [&](const DataDef& d) { define_datadef(d, top); },
                     [&](const Rpc& r) {
                       const Frame* f = define_frame(&r, top, r.typedefs, r.groupings);
                       for (const auto& d : r.datadefs) define_datadef(d, *f);
                       if (r.input) define_io(*r.input, *f);
                       if (r.output) define_io(*r.output, *f);
                     },
                     [&](const Notification& n) {
                       const Frame* f = define_frame(&n, top, n.typedefs, n.groupings);
                       for (const auto& d : n.datadefs) define_datadef(d, *f);
                     },
                 },
                 body.node);
    }
  }

  const Frame* define_frame(const void* key, const Frame& parent, const std::vector<Typedef>& typedefs,
                            const std::vector<Grouping>& groupings) {
    const Frame* f = frame_for(key, &parent, typedefs, groupings);
    for (const auto& t : typedefs) types_.resolve_typedef(t, *f);
    for (const auto& g : groupings) define_grouping(g, *f);
    return f;
  }

  void define_grouping(const Grouping& g, const Frame& enclosing) {
    groupings_.emplace_back(&g, &enclosing);
    const Frame* f = define_frame(&g, enclosing, g.typedefs, g.groupings);
    for (const auto& d : g.datadefs) define_datadef(d, *f);
  }

  void define_io(const IoBlock& io, const Frame& enclosing) {
    const Frame* f = define_frame(&io, enclosing, io.typedefs, io.groupings);
    for (const auto& d : io.datadefs) define_datadef(d, *f);
  }

  void define_datadef(const DataDef& def, const Frame& frame) {
    std::visit(Overloaded{
                   [&](const Container& c) {
                     const Frame* f = define_frame(&c, frame, c.typedefs, c.groupings);
                     for (const auto& d : c.datadefs) define_datadef(d, *f);
                   },
                   [&](const ListNode& l) {
                     const Frame* f = define_frame(&l, frame, l.typedefs, l.groupings);
                     for (const auto& d : l.datadefs) define_datadef(d, *f);
                   },
                   [&](const Choice& c) {
                     for (const auto& arm : c.arms) {
                       if (const auto* cs = std::get_if<Case>(&arm.arm)) {
                         for (const auto& d : cs->datadefs) define_datadef(d, frame);
                       } else {
                         define_datadef(*std::get<Box<DataDef>>(arm.arm), frame);
                       }
                     }
                   },
                   [&](const Augment& a) {
                     for (const auto& d : a.datadefs) define_datadef(d, frame);
                     for (const auto& cs : a.cases) {
                       for (const auto& d : cs.datadefs) define_datadef(d, frame);
                     }
                     if (a.input) define_io(*a.input, frame);
                     if (a.output) define_io(*a.output, frame);
                   },
                   [&](const auto&) {},
               },
               def.node);
  }

  // Instantiates a grouping under a scratch node, used or not.
  void check_grouping(const Grouping& g, const Frame& enclosing) {
    auto scratch = std::make_unique<SchemaNode>();
    scratch->name = g.name;
    scratch->kind = NodeKind::Container;
    scratch->module = enclosing.spec->owner();
    scratch->span = g.span;
    scratch->context = enclosing.spec;
    const bool saved = scratch_mode_;
    scratch_mode_ = true;
    expanding_.push_back(&g);
    const Frame* f = frame_for(&g, &enclosing, g.typedefs, g.groupings);
    Ctx ctx{f, scratch->module, false};
    for (const auto& d : g.datadefs) add_datadef(d, *scratch, ctx);
    expanding_.pop_back();
    scratch_mode_ = saved;
    scratch_roots_.push_back(std::move(scratch));
  }

  // ---- instantiation ---------------------------------------------------

  void instantiate_group(const std::vector<const Specification*>& group) {
    const std::string module = group.front()->owner().empty() ? group.front()->name : group.front()->owner();
    if (tree_.roots.count(module)) return;
    auto root = std::make_unique<SchemaNode>();
    root->name = module;
    root->kind = NodeKind::Module;
    root->module = module;
    root->span = group.front()->span;
    root->context = group.front();
    SchemaNode& node = *root;
    tree_.roots.emplace(module, std::move(root));
    for (const auto* spec : group) {
      Ctx ctx{&top_frame(*spec), module, false};
      for (const auto& body : spec->bodies) {
        if (const auto* d = std::get_if<DataDef>(&body.node)) add_datadef(*d, node, ctx);
        if (const auto* r = std::get_if<Rpc>(&body.node)) add_rpc(*r, node, ctx);
        if (const auto* n = std::get_if<Notification>(&body.node)) add_notification(*n, node, ctx);
      }
    }
  }

  std::unique_ptr<SchemaNode> make(NodeKind kind, std::string name, const SourceSpan& span, const SchemaNode& parent,
                                   const Ctx& ctx, std::optional<bool> config) {
    auto n = std::make_unique<SchemaNode>();
    n->kind = kind;
    n->name = std::move(name);
    n->span = span;
    n->module = ctx.module;
    n->context = ctx.frame->spec;
    n->config_explicit = config.has_value();
    n->config = config.value_or(parent.config);
    return n;
  }

  const SchemaNode* find_clash(const SchemaNode& parent, const SchemaNode& node) const {
    if (node.kind == NodeKind::Case) {
      for (const auto& c : parent.children) {
        if (c->kind == NodeKind::Case && c->name == node.name && c->module == node.module) return c.get();
      }
      return nullptr;
    }
    const SchemaNode* scope = &parent;
    while (scope->is_transparent() && scope->parent) scope = scope->parent;
    return find_in_scope(*scope, node);
  }

  static const SchemaNode* find_in_scope(const SchemaNode& scope, const SchemaNode& node) {
    for (const auto& c : scope.children) {
      if (c->kind != NodeKind::Case && c->name == node.name && c->module == node.module) return c.get();
      if (c->is_transparent()) {
        if (const auto* found = find_in_scope(*c, node)) return found;
      }
    }
    return nullptr;
  }

  SchemaNode* attach(SchemaNode& parent, std::unique_ptr<SchemaNode> node, const Ctx& ctx) {
    node->parent = &parent;
    if (const auto* clash = find_clash(parent, *node)) {
      Diagnostic d;
      d.code = ctx.augment_top ? DiagCode::AugmentNameCollision : DiagCode::DuplicateSibling;
      d.span = node->span;
      d.message = std::string(node_kind_name(node->kind)) + " '" + node->name + "' collides with " +
                  std::string(node_kind_name(clash->kind)) + " '" + clash->name + "' at " + location(clash->span);
      d.related.push_back(clash->span);
      diags_.report(std::move(d));
      return nullptr;
    }
    parent.children.push_back(std::move(node));
    return parent.children.back().get();
  }

  void add_datadef(const DataDef& def, SchemaNode& parent, const Ctx& ctx) {
    std::visit(Overloaded{
                   [&](const Container& c) { add_container(c, parent, ctx); },
                   [&](const Leaf& l) { add_leaf(l, parent, ctx); },
                   [&](const LeafList& l) { add_leaf_list(l, parent, ctx); },
                   [&](const ListNode& l) { add_list(l, parent, ctx); },
                   [&](const Choice& c) { add_choice(c, parent, ctx); },
                   [&](const AnyXml& a) {
                     auto n = make(NodeKind::AnyXml, a.name, a.span, parent, ctx, a.config);
                     n->origin = &a;
                     n->mandatory = a.mandatory;
                     attach(parent, std::move(n), ctx);
                   },
                   [&](const Uses& u) { expand_uses(u, parent, ctx); },
                   [&](const Augment& a) {
                     if (!scratch_mode_) augments_.push_back({&a, &parent, ctx.frame, ctx.module, {}});
                   },
               },
               def.node);
  }

  void add_container(const Container& c, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::Container, c.name, c.span, parent, ctx, c.config);
    n->origin = &c;
    if (c.presence) n->presence = c.presence->value;
    for (const auto& m : c.musts) n->musts.push_back(&m);
    auto* node = attach(parent, std::move(n), ctx);
    if (!node) return;
    const auto inner = ctx.nested(frame_for(&c, ctx.frame, c.typedefs, c.groupings));
    for (const auto& d : c.datadefs) add_datadef(d, *node, inner);
  }

  template <class L>
  void typed_node(SchemaNode& n, const L& leaf, const Ctx& ctx) {
    if (const auto* type = types_.resolve(leaf.type, *ctx.frame)) n.type = *type;
    for (const auto& m : leaf.musts) n.musts.push_back(&m);
    if (leaf.default_value) {
      if (n.type) types_.check_default(leaf.default_value->value, *n.type, leaf.default_value->span);
      n.default_value = leaf.default_value->value;
    } else if (n.type && n.type->default_value) {
      n.default_value = n.type->default_value;
    }
  }

  void add_leaf(const Leaf& l, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::Leaf, l.name, l.span, parent, ctx, l.config);
    n->origin = &l;
    n->mandatory = l.mandatory;
    typed_node(*n, l, ctx);
    auto* node = attach(parent, std::move(n), ctx);
    if (node && !scratch_mode_ && node->type && node->type->base == BaseType::Keyref) keyrefs_.push_back(node);
  }

  void add_leaf_list(const LeafList& l, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::LeafList, l.name, l.span, parent, ctx, l.config);
    n->origin = &l;
    n->mandatory = l.mandatory;
    if (l.min_elements) n->min_elements = l.min_elements->value;
    if (l.max_elements) n->max_elements = l.max_elements->value;
    typed_node(*n, l, ctx);
    auto* node = attach(parent, std::move(n), ctx);
    if (node && !scratch_mode_ && node->type && node->type->base == BaseType::Keyref) keyrefs_.push_back(node);
  }

  void add_list(const ListNode& l, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::List, l.name, l.span, parent, ctx, l.config);
    n->origin = &l;
    if (l.min_elements) n->min_elements = l.min_elements->value;
    if (l.max_elements) n->max_elements = l.max_elements->value;
    for (const auto& m : l.musts) n->musts.push_back(&m);
    auto* node = attach(parent, std::move(n), ctx);
    if (!node) return;
    const auto inner = ctx.nested(frame_for(&l, ctx.frame, l.typedefs, l.groupings));
    for (const auto& d : l.datadefs) add_datadef(d, *node, inner);
    lists_.push_back(node);
  }

  void add_choice(const Choice& c, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::Choice, c.name, c.span, parent, ctx, std::nullopt);
    n->origin = &c;
    n->mandatory = c.mandatory;
    if (c.default_value) n->default_value = c.default_value->value;
    auto* node = attach(parent, std::move(n), ctx);
    if (!node) return;
    choices_.push_back(node);
    const auto inner = ctx.nested(ctx.frame);
    for (const auto& arm : c.arms) {
      if (const auto* cs = std::get_if<Case>(&arm.arm)) {
        add_case(*cs, *node, inner);
      } else {
        add_short_case(*std::get<Box<DataDef>>(arm.arm), *node, inner);
      }
    }
  }

  void add_case(const Case& cs, SchemaNode& choice, const Ctx& ctx) {
    auto n = make(NodeKind::Case, cs.name, cs.span, choice, ctx, std::nullopt);
    n->origin = &cs;
    auto* node = attach(choice, std::move(n), ctx);
    if (!node) return;
    for (const auto& d : cs.datadefs) add_datadef(d, *node, ctx.nested(ctx.frame));
  }

  void add_short_case(const DataDef& d, SchemaNode& choice, const Ctx& ctx) {
    auto n = make(NodeKind::Case, std::string(d.name()), d.span(), choice, ctx, std::nullopt);
    n->origin = &d;
    auto* node = attach(choice, std::move(n), ctx);
    if (node) add_datadef(d, *node, ctx);
  }

  void add_io(const IoBlock& io, bool input, SchemaNode& rpc, const Ctx& ctx) {
    auto n = make(input ? NodeKind::Input : NodeKind::Output, input ? "input" : "output", io.span, rpc, ctx, false);
    n->config_explicit = false;
    n->origin = &io;
    auto* node = attach(rpc, std::move(n), ctx);
    if (!node) return;
    const auto inner = ctx.nested(frame_for(&io, ctx.frame, io.typedefs, io.groupings));
    for (const auto& d : io.datadefs) add_datadef(d, *node, inner);
  }

  void add_rpc(const Rpc& r, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::Rpc, r.name, r.span, parent, ctx, false);
    n->config_explicit = false;
    n->origin = &r;
    auto* node = attach(parent, std::move(n), ctx);
    if (!node) return;
    const auto inner = ctx.nested(frame_for(&r, ctx.frame, r.typedefs, r.groupings));
    for (const auto& d : r.datadefs) add_datadef(d, *node, inner);
    if (r.input) add_io(*r.input, true, *node, inner);
    if (r.output) add_io(*r.output, false, *node, inner);
  }

  void add_notification(const Notification& nt, SchemaNode& parent, const Ctx& ctx) {
    auto n = make(NodeKind::Notification, nt.name, nt.span, parent, ctx, false);
    n->config_explicit = false;
    n->origin = &nt;
    auto* node = attach(parent, std::move(n), ctx);
    if (!node) return;
    const auto inner = ctx.nested(frame_for(&nt, ctx.frame, nt.typedefs, nt.groupings));
    for (const auto& d : nt.datadefs) add_datadef(d, *node, inner);
  }

  // ---- uses and refine ----------------------------------------------------

  void expand_uses(const Uses& u, SchemaNode& parent, const Ctx& ctx) {
    const auto found = find_grouping(*ctx.frame, u.grouping);
    if (found.unknown_prefix) {
      diags_.error(DiagCode::UnknownPrefix, u.span,
                   "prefix '" + u.grouping.substr(0, u.grouping.find(':')) + "' is not defined");
      return;
    }
    if (!found.def) {
      diags_.error(DiagCode::UnknownGrouping, u.span, "unknown grouping '" + u.grouping + "'");
      return;
    }
    if (auto open = std::find(expanding_.begin(), expanding_.end(), found.def); open != expanding_.end()) {
      std::set<const Grouping*> members(open, expanding_.end());
      if (!reported_cycles_.insert(members).second) return;
      std::string chain;
      for (auto it = open; it != expanding_.end(); ++it) chain += (*it)->name + " -> ";
      diags_.error(DiagCode::CircularGrouping, u.span, "grouping cycle: " + chain + found.def->name);
      return;
    }
    const Grouping& g = *found.def;
    expanding_.push_back(&g);
    const std::size_t before = parent.children.size();
    Ctx inner{frame_for(&g, found.frame, g.typedefs, g.groupings), ctx.module, ctx.augment_top};
    for (const auto& d : g.datadefs) add_datadef(d, parent, inner);
    expanding_.pop_back();

    std::vector<SchemaNode*> added;
    for (std::size_t i = before; i < parent.children.size(); ++i) added.push_back(parent.children[i].get());
    for (const auto& r : u.refinements) refine(r, added, ctx);
  }

  static NodeKind refined_kind(RefineKind kind) {
    switch (kind) {
      case RefineKind::Container: return NodeKind::Container;
      case RefineKind::Leaf: return NodeKind::Leaf;
      case RefineKind::LeafList: return NodeKind::LeafList;
      case RefineKind::List: return NodeKind::List;
      case RefineKind::Choice: return NodeKind::Choice;
      case RefineKind::Case: return NodeKind::Case;
      case RefineKind::AnyXml: return NodeKind::AnyXml;
    }
    return NodeKind::Container;
  }

  static void set_config(SchemaNode& node, bool config) {
    node.config = config;
    for (auto& c : node.children) {
      if (!c->config_explicit) set_config(*c, config);
    }
  }

  void refine(const Refinement& r, const std::vector<SchemaNode*>& candidates, const Ctx& ctx) {
    auto it = std::find_if(candidates.begin(), candidates.end(), [&](const SchemaNode* n) { return n->name == r.target; });
    if (it == candidates.end()) {
      diags_.error(DiagCode::RefineTargetNotFound, r.span,
                   "no node '" + r.target + "' to refine in the expanded grouping");
      return;
    }
    SchemaNode& node = **it;
    if (node.kind != refined_kind(r.kind)) {
      diags_.error(DiagCode::RefineKindMismatch, r.span,
                   "'" + r.target + "' is a " + std::string(node_kind_name(node.kind)) + ", not a " +
                       std::string(refine_keyword(r.kind)));
      return;
    }
    if (r.default_value) {
      if (node.type) types_.check_default(r.default_value->value, *node.type, r.default_value->span);
      node.default_value = r.default_value->value;
    }
    if (r.presence) node.presence = r.presence->value;
    if (r.min_elements) node.min_elements = r.min_elements->value;
    if (r.max_elements) node.max_elements = r.max_elements->value;
    if (r.mandatory) node.mandatory = r.mandatory;
    if (r.config) {
      node.config_explicit = true;
      set_config(node, *r.config);
    }
    for (const auto& m : r.musts) node.musts.push_back(&m);
    std::vector<SchemaNode*> kids;
    for (auto& c : node.children) kids.push_back(c.get());
    for (const auto& child : r.children) refine(child, kids, ctx);
  }

  // ---- augment --------------------------------------------------------

  struct PendingAugment {
    const Augment* augment;
    SchemaNode* context;
    const Frame* frame;
    std::string module;
    std::string last_error;
  };

  PathContext path_context(const Specification& spec, const std::string& module) const {
    static const std::map<std::string, std::string> kEmpty;
    auto it = registry_.prefix_tables.find(spec.name);
    return PathContext{&tree_, it == registry_.prefix_tables.end() ? &kEmpty : &it->second, module};
  }

  void apply_augments() {
    while (true) {
      auto batch = std::move(augments_);
      augments_.clear();
      std::vector<PendingAugment> waiting;
      bool progress = false;
      for (auto& p : batch) {
        auto id = parse_schema_node_id(p.augment->target.value);
        if (!id) {
          diags_.error(DiagCode::InvalidArgument, p.augment->target.span,
                       "invalid augment target \"" + p.augment->target.value + "\"");
          continue;
        }
        auto target = resolve_mutable(*id, *p.context, path_context(*p.frame->spec, p.frame->spec->owner()));
        if (auto* error = std::get_if<PathError>(&target)) {
          p.last_error = error->message;
          waiting.push_back(std::move(p));
          continue;
        }
        progress = true;
        apply_augment(p, *std::get<SchemaNode*>(target));
      }
      waiting.insert(waiting.end(), std::make_move_iterator(augments_.begin()),
                     std::make_move_iterator(augments_.end()));
      augments_ = std::move(waiting);
      if (!progress || augments_.empty()) break;
    }
    for (const auto& p : augments_) {
      diags_.error(DiagCode::AugmentTargetNotFound, p.augment->span,
                   "augment target '" + p.augment->target.value + "' not found: " + p.last_error);
    }
    augments_.clear();
  }

  void payload_mismatch(const SourceSpan& span, std::string_view what, const SchemaNode& target) {
    diags_.error(DiagCode::AugmentPayloadMismatch, span,
                 std::string(what) + " cannot be added to " + std::string(node_kind_name(target.kind)) + " '" +
                     target.name + "'");
  }

  void apply_augment(const PendingAugment& p, SchemaNode& target) {
    const Augment& a = *p.augment;
    Ctx ctx{p.frame, p.module, true};
    switch (target.kind) {
      case NodeKind::Leaf:
      case NodeKind::LeafList:
      case NodeKind::AnyXml:
        payload_mismatch(a.span, "nodes", target);
        return;
      case NodeKind::Choice:
        for (const auto& d : a.datadefs) {
          const auto k = d.keyword();
          if (k == "container" || k == "leaf" || k == "leaf-list" || k == "list" || k == "anyxml") {
            add_short_case(d, target, ctx);
          } else {
            payload_mismatch(d.span(), "'" + std::string(k) + "'", target);
          }
        }
        for (const auto& cs : a.cases) add_case(cs, target, ctx);
        if (a.input) payload_mismatch(a.input->span, "'input'", target);
        if (a.output) payload_mismatch(a.output->span, "'output'", target);
        return;
      case NodeKind::Rpc:
        for (const auto& d : a.datadefs) payload_mismatch(d.span(), "'" + std::string(d.keyword()) + "'", target);
        for (const auto& cs : a.cases) payload_mismatch(cs.span, "'case'", target);
        if (a.input) add_io(*a.input, true, target, ctx);
        if (a.output) add_io(*a.output, false, target, ctx);
        return;
      default:
        for (const auto& d : a.datadefs) add_datadef(d, target, ctx);
        for (const auto& cs : a.cases) payload_mismatch(cs.span, "'case'", target);
        if (a.input) payload_mismatch(a.input->span, "'input'", target);
        if (a.output) payload_mismatch(a.output->span, "'output'", target);
        return;
    }
  }

  // ---- lists, keyrefs, choices -------------------------------------------

  void check_lists() {
    for (const auto* list : lists_) {
      check_list_keys(*list, diags_);
      check_unique(*list, path_context(*list->context, list->module), diags_);
    }
  }

  void check_keyrefs() {
    for (auto* leaf : keyrefs_) {
      SourceSpan span = leaf->span;
      const TypeSpec* spec = nullptr;
      if (const auto* const* l = std::get_if<const Leaf*>(&leaf->origin)) spec = &(*l)->type;
      if (const auto* const* l = std::get_if<const LeafList*>(&leaf->origin)) spec = &(*l)->type;
      if (spec && spec->restriction && spec->restriction->kind == RestrictionKind::Path) {
        span = spec->restriction->span;
      }
      if (!leaf->type->path) {
        diags_.error(DiagCode::MissingSubstatement, span, "keyref type of '" + leaf->name + "' requires a path");
        continue;
      }
      const auto& path = *leaf->type->path;
      auto id = parse_schema_node_id(path);
      if (!id) {
        diags_.error(DiagCode::KeyrefTargetInvalid, span, "invalid keyref path \"" + path + "\"");
        continue;
      }
      auto resolved = resolve_mutable(*id, *leaf, path_context(*leaf->context, leaf->context->owner()));
      if (auto* error = std::get_if<PathError>(&resolved)) {
        diags_.error(DiagCode::KeyrefTargetInvalid, span,
                     "keyref path \"" + path + "\" does not resolve: " + error->message);
        continue;
      }
      const SchemaNode* target = std::get<SchemaNode*>(resolved);
      const SchemaNode* list = data_parent(const_cast<SchemaNode*>(target));
      bool is_key = false;
      if (target->kind == NodeKind::Leaf && list && list->kind == NodeKind::List) {
        if (const auto* const* l = std::get_if<const ListNode*>(&list->origin); l && (*l)->key) {
          for (const auto& word : split_words((*l)->key->value)) is_key = is_key || local_part(word) == target->name;
        }
      }
      if (!is_key) {
        diags_.error(DiagCode::KeyrefTargetInvalid, span,
                     "keyref path \"" + path + "\" must lead to a key leaf of a list, found " +
                         std::string(node_kind_name(target->kind)) + " '" + target->name + "'");
      }
    }
  }

  void check_choice_defaults() {
    for (const auto* choice : choices_) {
      if (!choice->default_value) continue;
      const auto* const* origin = std::get_if<const Choice*>(&choice->origin);
      const SourceSpan span = origin && (*origin)->default_value ? (*origin)->default_value->span : choice->span;
      const auto* arm = choice->child(*choice->default_value);
      if (!arm || arm->kind != NodeKind::Case) {
        diags_.error(DiagCode::ChoiceDefaultNotFound, span,
                     "default case '" + *choice->default_value + "' is not a case of choice '" + choice->name + "'");
      }
    }
  }

  // ---- extensions ----------------------------------------------------------

  void check_extensions(const Specification& spec, const RawStatement& stmt) {
    for (const auto& c : stmt.children) {
      if (c.has_prefix()) check_extension_use(spec, c);
      check_extensions(spec, c);
    }
  }

  void check_extension_use(const Specification& spec, const RawStatement& use) {
    const std::string prefix(use.prefix());
    const std::string name(use.local_name());
    auto group = prefix_group(spec, prefix);
    if (!group) {
      diags_.error(DiagCode::UnknownPrefix, use.span, "prefix '" + prefix + "' is not defined");
      return;
    }
    const Extension* ext = nullptr;
    for (const auto* member : *group) {
      auto table = extensions_.find(member);
      if (table == extensions_.end()) continue;
      if (auto it = table->second.find(name); it != table->second.end()) {
        ext = it->second;
        break;
      }
    }
    if (!ext) {
      diags_.error(DiagCode::UnknownExtension, use.span,
                   "extension '" + name + "' is not defined in the module bound to prefix '" + prefix + "'");
      return;
    }
    if (ext->argument.has_value() != use.argument.has_value()) {
      diags_.error(DiagCode::ExtensionArgumentMismatch, use.span,
                   ext->argument ? "extension '" + name + "' requires an argument (" + ext->argument->name + ")"
                                 : "extension '" + name + "' takes no argument");
    }
  }

  const ModuleRegistry& registry_;
  DiagnosticBag diags_;
  TypeResolver types_;
  SchemaTree tree_;
  std::map<const Specification*, std::unique_ptr<Frame>> top_frames_;
  std::map<const void*, std::unique_ptr<Frame>> frames_;
  std::map<const Specification*, std::map<std::string, const Extension*>> extensions_;
  std::vector<std::vector<const Specification*>> groups_;
  std::vector<const Specification*> checked_;
  std::vector<std::pair<const Grouping*, const Frame*>> groupings_;
  std::set<std::set<const Grouping*>> reported_cycles_;
  std::vector<std::unique_ptr<SchemaNode>> scratch_roots_;
  std::vector<const Grouping*> expanding_;
  std::vector<PendingAugment> augments_;
  std::vector<SchemaNode*> lists_;
  std::vector<SchemaNode*> keyrefs_;
  std::vector<SchemaNode*> choices_;
  bool scratch_mode_ = false;
};

TypedefLookup Frame::find_typedef(std::string_view name) const {
  auto found = checker->find_typedef(*this, name);
  return TypedefLookup{found.def, found.frame, found.unknown_prefix};
}

}  // namespace

CheckResult check(const ModuleRegistry& registry) { return Checker(registry).run(); }

}  // namespace yangc
