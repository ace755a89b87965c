#include "yangc/yin.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace yangc {

namespace {

struct TableEntry {
  std::string_view keyword;
  YinArgument argument;
};

constexpr std::array kTable = {
    TableEntry{"anyxml", {"name", false}},       TableEntry{"argument", {"name", false}},
    TableEntry{"augment", {"target-node", false}}, TableEntry{"belongs-to", {"module", false}},
    TableEntry{"case", {"name", false}},         TableEntry{"choice", {"name", false}},
    TableEntry{"config", {"value", false}},      TableEntry{"contact", {"text", true}},
    TableEntry{"container", {"name", false}},    TableEntry{"default", {"value", false}},
    TableEntry{"description", {"text", true}},   TableEntry{"enum", {"name", false}},
    TableEntry{"error-app-tag", {"value", false}}, TableEntry{"error-message", {"value", true}},
    TableEntry{"extension", {"name", false}},    TableEntry{"grouping", {"name", false}},
    TableEntry{"import", {"module", false}},     TableEntry{"include", {"module", false}},
    TableEntry{"key", {"value", false}},         TableEntry{"leaf", {"name", false}},
    TableEntry{"leaf-list", {"name", false}},    TableEntry{"length", {"value", false}},
    TableEntry{"list", {"name", false}},         TableEntry{"mandatory", {"value", false}},
    TableEntry{"max-elements", {"value", false}}, TableEntry{"min-elements", {"value", false}},
    TableEntry{"module", {"name", false}},       TableEntry{"must", {"condition", false}},
    TableEntry{"namespace", {"uri", false}},     TableEntry{"notification", {"name", false}},
    TableEntry{"ordered-by", {"value", false}},  TableEntry{"organization", {"text", true}},
    TableEntry{"path", {"value", false}},        TableEntry{"pattern", {"value", false}},
    TableEntry{"prefix", {"value", false}},      TableEntry{"presence", {"value", false}},
    TableEntry{"range", {"value", false}},       TableEntry{"reference", {"text", true}},
    TableEntry{"revision", {"date", false}},     TableEntry{"rpc", {"name", false}},
    TableEntry{"status", {"value", false}},      TableEntry{"submodule", {"name", false}},
    TableEntry{"type", {"name", false}},         TableEntry{"typedef", {"name", false}},
    TableEntry{"unique", {"tag", false}},        TableEntry{"units", {"name", false}},
    TableEntry{"uses", {"name", false}},         TableEntry{"value", {"value", false}},
    TableEntry{"when", {"condition", false}},    TableEntry{"yang-version", {"value", false}},
    TableEntry{"yin-element", {"value", false}},
};

std::string escape(std::string_view text, bool attribute) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\r': out += "&#13;"; break;
      case '\n': out += attribute ? "&#10;" : "\n"; break;
      case '\t': out += attribute ? "&#9;" : "\t"; break;
      default: out += c;
    }
  }
  return out;
}

class Writer {
 public:
  Writer(const Specification& spec, const YinOptions& options) : spec_(spec), options_(options) {}

  std::string run() {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    statement(spec_.source, 0, true);
    return std::move(out_);
  }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  std::string namespace_of(const std::string& module) const {
    if (options_.registry) {
      if (const auto* spec = options_.registry->find(module)) {
        if (auto uri = spec->namespace_uri()) return *uri;
      }
    }
    if (module == spec_.name) {
      if (auto uri = spec_.namespace_uri()) return *uri;
    }
    return unresolved_namespace(module);
  }

  std::vector<std::pair<std::string, std::string>> namespace_declarations() const {
    std::vector<std::pair<std::string, std::string>> out;
    if (auto own = spec_.own_prefix()) out.emplace_back(*own, namespace_of(spec_.owner()));
    for (const auto& imp : spec_.imports) {
      const bool taken = std::any_of(out.begin(), out.end(), [&](const auto& d) { return d.first == imp.prefix.value; });
      if (!taken) out.emplace_back(imp.prefix.value, namespace_of(imp.module));
    }
    undeclared_prefixes(spec_.source, out);
    return out;
  }

  // Extension prefixes that nothing else declares.
  static void undeclared_prefixes(const RawStatement& s, std::vector<std::pair<std::string, std::string>>& out) {
    if (s.has_prefix()) {
      const std::string prefix(s.prefix());
      const bool known = std::any_of(out.begin(), out.end(), [&](const auto& d) { return d.first == prefix; });
      if (!known) out.emplace_back(prefix, unresolved_namespace(prefix));
    }
    for (const auto& c : s.children) undeclared_prefixes(c, out);
  }

  // Argument declaration of the extension behind a prefixed keyword.
  std::optional<YinArgument> extension_argument(const RawStatement& s) const {
    const std::string prefix(s.prefix());
    const std::string name(s.local_name());
    std::vector<const Specification*> candidates;
    std::optional<std::string> module;
    if (spec_.own_prefix() == prefix) {
      candidates.push_back(&spec_);
      module = spec_.owner();
    } else {
      for (const auto& imp : spec_.imports) {
        if (imp.prefix.value == prefix) module = imp.module;
      }
    }
    if (options_.registry && module) {
      for (const auto* member : options_.registry->group(*module)) candidates.push_back(member);
      if (!spec_.is_module()) {
        for (const auto* member : options_.registry->group(spec_.name)) candidates.push_back(member);
      }
    }
    for (const auto* candidate : candidates) {
      for (const auto& body : candidate->bodies) {
        const auto* ext = std::get_if<Extension>(&body.node);
        if (!ext || ext->name != name) continue;
        if (!ext->argument) return std::nullopt;
        return YinArgument{ext->argument->name, ext->argument->yin_element.value_or(false)};
      }
    }
    return YinArgument{"value", false};
  }

  void statement(const RawStatement& s, int depth, bool root) {
    std::optional<YinArgument> arg;
    std::string arg_name;
    if (s.has_prefix()) {
      arg = extension_argument(s);
      if (arg) arg_name = arg->element ? std::string(s.prefix()) + ":" + std::string(arg->name) : std::string(arg->name);
    } else {
      arg = yin_argument(s.keyword);
      if (arg) arg_name = std::string(arg->name);
    }
    if (s.argument && !arg) {
      arg = YinArgument{"value", false};
      arg_name = "value";
    }
    const bool arg_attribute = s.argument && arg && !arg->element;
    const bool arg_element = s.argument && arg && arg->element;

    indent(depth);
    out_ += "<" + s.keyword;
    if (arg_attribute) out_ += " " + arg_name + "=\"" + escape(*s.argument, true) + "\"";
    if (root) {
      out_ += " xmlns=\"" + escape(options_.yin_namespace, true) + "\"";
      for (const auto& [prefix, uri] : namespace_declarations()) {
        out_ += " xmlns:" + prefix + "=\"" + escape(uri, true) + "\"";
      }
    }
    if (s.children.empty() && !arg_element) {
      out_ += "/>\n";
      return;
    }
    out_ += ">\n";
    if (arg_element) {
      indent(depth + 1);
      out_ += "<" + arg_name + ">" + escape(*s.argument, false) + "</" + arg_name + ">\n";
    }
    for (const auto& c : s.children) statement(c, depth + 1, false);
    indent(depth);
    out_ += "</" + s.keyword + ">\n";
  }

  const Specification& spec_;
  const YinOptions& options_;
  std::string out_;
};

}  // namespace

std::optional<YinArgument> yin_argument(std::string_view keyword) {
  for (const auto& entry : kTable) {
    if (entry.keyword == keyword) return entry.argument;
  }
  return std::nullopt;
}

std::string unresolved_namespace(std::string_view module) {
  return "urn:yangc:unresolved:" + std::string(module);
}

std::string emit_yin(const Specification& spec, const YinOptions& options) { return Writer(spec, options).run(); }

}  // namespace yangc
