// Copyright 2026 The exitflow authors.
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

#include "exitflow/path_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace exitflow {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_path(std::ostream& os, const CadlagPath& path) {
  os << "cadlag-path v1\n";
  os << "horizon " << fmt(path.horizon()) << "\n";
  os << "segments " << path.segments().size() << "\n";
  for (const PathSegment& s : path.segments()) {
    os << fmt(s.start) << ' '
       << (s.kind == SegmentKind::kConstant ? "CONSTANT" : "LINEAR") << ' '
       << fmt(s.value) << ' ' << fmt(s.slope) << "\n";
  }
  os << "terminal " << fmt(path.terminal()) << "\n";
}

CadlagPath read_path(std::istream& is) {
  std::string word, version;
  if (!(is >> word >> version) || word != "cadlag-path" || version != "v1")
    throw std::invalid_argument("read_path: bad header");
  double horizon;
  if (!(is >> word >> horizon) || word != "horizon")
    throw std::invalid_argument("read_path: missing horizon");
  std::size_t count;
  if (!(is >> word >> count) || word != "segments")
    throw std::invalid_argument("read_path: missing segment count");
  std::vector<PathSegment> segs;
  segs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PathSegment s;
    std::string kind;
    if (!(is >> s.start >> kind >> s.value >> s.slope))
      throw std::invalid_argument("read_path: truncated segment list");
    if (kind == "CONSTANT")
      s.kind = SegmentKind::kConstant;
    else if (kind == "LINEAR")
      s.kind = SegmentKind::kLinear;
    else
      throw std::invalid_argument("read_path: unknown segment kind " + kind);
    segs.push_back(s);
  }
  double terminal;
  if (!(is >> word >> terminal) || word != "terminal")
    throw std::invalid_argument("read_path: missing terminal");
  return CadlagPath(std::move(segs), terminal, horizon);
}

std::string path_to_string(const CadlagPath& path) {
  std::ostringstream os;
  write_path(os, path);
  return os.str();
}

CadlagPath path_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_path(is);
}

CadlagPath load_path_file(const std::string& filename) {
  std::ifstream is(filename);
  if (!is) throw std::invalid_argument("cannot open path file: " + filename);
  return read_path(is);
}

void save_path_file(const std::string& filename, const CadlagPath& path) {
  std::ofstream os(filename);
  if (!os) throw std::invalid_argument("cannot write path file: " + filename);
  write_path(os, path);
}

}  // namespace exitflow
