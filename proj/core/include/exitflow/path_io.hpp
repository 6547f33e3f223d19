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

#ifndef EXITFLOW_PATH_IO_HPP_
#define EXITFLOW_PATH_IO_HPP_

#include <iosfwd>
#include <string>

#include "exitflow/cadlag_path.hpp"

namespace exitflow {

// Text record for a path. Decimals carry 17 significant digits, so the
// round trip is exact:
//
//   cadlag-path v1
//   horizon <T>
//   segments <m>
//   <start> <CONSTANT|LINEAR> <value> <slope>
//   ...
//   terminal <value>
void write_path(std::ostream& os, const CadlagPath& path);
CadlagPath read_path(std::istream& is);

std::string path_to_string(const CadlagPath& path);
CadlagPath path_from_string(const std::string& text);

CadlagPath load_path_file(const std::string& filename);
void save_path_file(const std::string& filename, const CadlagPath& path);

}  // namespace exitflow

#endif  // EXITFLOW_PATH_IO_HPP_
