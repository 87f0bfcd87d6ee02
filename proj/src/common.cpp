// Copyright 2026 The nfa3 Authors
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

#include "nfa3/common.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nfa3 {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  if (text.empty()) throw FormatError("empty " + what);
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw FormatError("bad " + what + ": " + text);
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace nfa3
