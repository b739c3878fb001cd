// Copyright 2026 The FreqGuard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "commands.h"

int main(int argc, char** argv) {
  using namespace freqguard::cli;
  CLI::App app{"freqguard: frequency-domain backdoor attacks and defenses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "freqguard 0.1.0");

  const std::vector<std::string> keys = config_keys();
  std::map<std::string, std::string> values;
  std::string config_file;
  const std::map<std::string, std::string> descriptions = {
      {"poison", "poison the training split and export it with its manifest"},
      {"defend", "apply blur, frequency patching or the luma view to a dataset"},
      {"analyze", "residual statistics, blur identity and compaction report"},
      {"train", "contrastive training of the encoder"},
      {"eval", "KNN accuracy and attack success rate (trains unless --encoder)"},
      {"project", "PCA projection of dataset embeddings"},
  };
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("--config", config_file, "JSON config file; flags override it");
    for (const std::string& key : keys) {
      sub->add_option("--" + key, values[key], "config key " + key);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::map<std::string, std::string> flags;
  for (const std::string& key : keys) {
    if (app.get_subcommands().front()->count("--" + key) > 0) flags[key] = values[key];
  }
  freqguard::Json config;
  try {
    config = build_config(config_file.empty() ? std::nullopt
                                              : std::optional<std::filesystem::path>(config_file),
                          flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const freqguard::Error& e) {
    std::cerr << freqguard::error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == freqguard::ErrorKind::kFormat ? kExitFormat : kExitOther;
  }
  return run_command(command, config, std::cout, std::cerr);
}
