#include "yangc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "yangc/diagnostics.hpp"
#include "yangc/resolver.hpp"
#include "yangc/semantics.hpp"
#include "yangc/yin.hpp"

namespace yangc {

namespace {

constexpr std::string_view kOptions =
    "  -h             print this synopsis\n"
    "  -f format      translate each specification; format is: yin\n"
    "  -o outputfile  write the translation to outputfile (standard output if not given);\n"
    "                 ignored when no format is given\n"
    "  -p paths       where to look for imported and included specifications;\n"
    "                 a path list, may be repeated\n";

std::variant<CliConfig, std::string> parse_args(const std::vector<std::string>& args) {
  CliConfig config;
  CLI::App app{"YANG compiler", "yangc"};
  app.set_help_flag();
  app.add_flag("-h", config.show_help);
  app.add_option("-f", config.format)->check(CLI::IsMember({"yin"}));
  app.add_option("-o", config.output_file);
  app.add_option("-p", config.search_paths)->allow_extra_args(false);
  app.add_option("file", config.input_files);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return std::string(e.what());
  }
  if (!config.show_help && config.input_files.empty()) return std::string("no input file");
  if (config.format && config.output_file && config.input_files.size() > 1) {
    return std::string("-o names a single file but " + std::to_string(config.input_files.size()) +
                       " input files were given");
  }
  return config;
}

void tool_error(std::ostream& err, DiagCode code, const std::string& message) {
  err << "yangc: error[" << code_name(code) << "]: " << message << "\n";
}

class Driver {
 public:
  Driver(const CliConfig& config, std::ostream& out, std::ostream& err, const CliEnvironment& env)
      : config_(config), out_(out), err_(err), provider_(make_search_paths(config.search_paths, env.yang_path)) {}

  int run() {
    std::ostringstream translations;
    for (const auto& file : config_.input_files) process(file, translations);
    if (config_.format) {
      if (config_.output_file) {
        std::ofstream sink(*config_.output_file, std::ios::binary);
        if (!(sink << translations.str())) {
          tool_error(err_, DiagCode::FileNotReadable, "cannot write '" + *config_.output_file + "'");
          status_ = std::max<int>(status_, kExitUsage);
        }
      } else {
        out_ << translations.str();
      }
    }
    return status_;
  }

 private:
  void process(const std::string& file, std::ostream& translations) {
    auto text = provider_.read(file);
    if (!text) {
      tool_error(err_, DiagCode::FileNotReadable, "cannot read '" + file + "'");
      status_ = std::max<int>(status_, kExitUsage);
      return;
    }
    DiagnosticBag diags;
    auto spec = load_specification(*text, file, diags);
    if (spec) {
      auto root = std::make_shared<const Specification>(std::move(*spec));
      auto registry = resolve_linkages(root, provider_, diags);
      auto checked = check(registry);
      diags.append(checked.diagnostics);
      if (config_.format) {
        YinOptions options;
        options.registry = &registry;
        translations << emit_yin(*root, options);
      }
    }
    report(diags);
  }

  void report(const DiagnosticBag& diags) {
    if (diags.has_errors()) status_ = std::max<int>(status_, kExitInvalid);
    std::istringstream lines(render(diags.items(), RenderFormat::Human));
    for (std::string line; std::getline(lines, line);) {
      if (printed_.insert(line).second) err_ << line << "\n";
    }
  }

  const CliConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  FileSystemProvider provider_;
  std::set<std::string> printed_;
  int status_ = kExitClean;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnvironment& env) {
  auto parsed = parse_args(args);
  if (auto* error = std::get_if<std::string>(&parsed)) {
    tool_error(err, DiagCode::UsageError, *error);
    err << kUsage << "\n";
    return kExitUsage;
  }
  const auto& config = std::get<CliConfig>(parsed);
  if (config.show_help) {
    out << kUsage << "\n" << kOptions;
    return kExitClean;
  }
  return Driver(config, out, err, env).run();
}

}  // namespace yangc
