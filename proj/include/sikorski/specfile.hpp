// Copyright 2026 The Sikorski Authors
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sikorski/space.hpp"
#include "sikorski/uniform.hpp"

namespace sikorski {

// Line-oriented description of a space and the experiments to run on it.
//
//   # comment
//   [space]        name, params, ambient, chart, domain.<p>, samples.<p>, inset
//   [generators]   <name> = <expression over ambient>
//   [bounded]      <generator> = <bound>
//   [families]     <family> = <generator>, <generator>, ...
//   [functions]    <name> = <omega in u1..uk> | <generator>, ...
//   [probes]       <name> = <expr in n>[, <expr in n> ...] @ <first>..<last>
//   [map <name>]   target, component.<coord>, generator.<name>, witness.<name>
//   [experiments]  <command>.<key> = <value>, plus tol and tail
//
// Domains are written "(lo, hi)" / "[lo, hi]" with any mix of brackets;
// bounds are constant expressions or +-inf. Samples are a count, or
// "[lo, hi]:count" segments joined by ";".

struct SpecSetting {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // of the value
};

struct SpecFamily {
  std::string name;
  std::vector<std::string> generators;
};

struct SpecFunction {
  std::string name;
  SmoothFunction function;
};

struct SpecFile {
  std::string origin;  // path or label, for messages
  DiffSpace space;
  std::vector<SpecFamily> families;
  std::vector<SpecFunction> functions;
  std::vector<Probe> probes;
  std::vector<SmoothMapWitness> maps;
  std::vector<std::pair<std::string, SpecSetting>> experiments;  // declaration order

  /// Generator family by name; "all" (or an empty name) is the full list.
  GeneratorFamily family(std::string_view name) const;
  const SmoothFunction& function(std::string_view name) const;
  const SmoothMapWitness& map(std::string_view name) const;
  std::optional<SpecSetting> setting(std::string_view key) const;
};

/// Parses and validates; every failure is a SpecError with line and column.
SpecFile parse_spec(std::string_view text, std::string origin = "<spec>");
SpecFile load_spec(const std::string& path);

}  // namespace sikorski
