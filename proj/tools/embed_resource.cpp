// Copyright 2026 The glyphkit Authors
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

// Build helper: embed_resource <input> <output.cpp> <symbol>
// Emits a C array `<symbol>_data` and its length `<symbol>_size`.

#include <cstdio>
#include <fstream>
#include <iterator>
#include <vector>

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: %s <input> <output.cpp> <symbol>\n", argv[0]);
    return 2;
  }
  std::ifstream in(argv[1], std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", argv[1]);
    return 1;
  }
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  std::FILE* out = std::fopen(argv[2], "w");
  if (!out) {
    std::fprintf(stderr, "cannot write %s\n", argv[2]);
    return 1;
  }
  std::fprintf(out, "// Generated from %s. Do not edit.\n", argv[1]);
  std::fprintf(out, "extern \"C\" {\nextern const unsigned char %s_data[];\n", argv[3]);
  std::fprintf(out, "extern const unsigned long %s_size;\n", argv[3]);
  std::fprintf(out, "const unsigned char %s_data[] = {", argv[3]);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i % 16 == 0) std::fputs("\n", out);
    std::fprintf(out, "%u,", bytes[i]);
  }
  std::fprintf(out, "\n};\nconst unsigned long %s_size = %zu;\n}\n", argv[3], bytes.size());
  return std::fclose(out) == 0 ? 0 : 1;
}
