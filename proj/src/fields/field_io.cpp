/*
  Copyright 2026 The nsreg Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "fields/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "common/error.hpp"

namespace nsreg {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'R', 'G', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::string& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char b[sizeof(T)];
  in.read(reinterpret_cast<char*>(b), sizeof(T));
  require(static_cast<bool>(in), ErrorCode::Io, "truncated field file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_field(const std::string& path, const GridField& field, double time) {
  std::string buf(kMagic, sizeof(kMagic));
  put<std::uint32_t>(buf, kVersion);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.grid.n));
  put<double>(buf, field.grid.length);
  put<double>(buf, time);
  put<std::uint32_t>(buf, (field.solenoidal ? 1u : 0u) | (field.periodic ? 2u : 0u));
  const std::string recipe = field.recipe.dump();
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(recipe.size()));
  buf += recipe;
  buf.reserve(buf.size() + 3 * field.grid.size() * sizeof(double));
  for (const auto& c : field.u)
    for (double v : c) put<double>(buf, v);

  // Write next to the target and rename, so readers never see a partial file.
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot open " + tmp + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, ErrorCode::Io, "cannot rename field file into place: " + ec.message());
}

StampedField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open field file " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  require(in && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0, ErrorCode::Io, "not a field file: " + path);
  require(get<std::uint32_t>(in) == kVersion, ErrorCode::Io, "unsupported field file version");
  StampedField s;
  s.field.grid.n = static_cast<int>(get<std::uint32_t>(in));
  s.field.grid.length = get<double>(in);
  s.field.grid.validate();
  s.time = get<double>(in);
  const auto flags = get<std::uint32_t>(in);
  s.field.solenoidal = (flags & 1u) != 0;
  s.field.periodic = (flags & 2u) != 0;
  const auto m = get<std::uint32_t>(in);
  std::string recipe(m, '\0');
  in.read(recipe.data(), m);
  require(static_cast<bool>(in), ErrorCode::Io, "truncated field file");
  s.field.recipe = Json::parse(recipe, nullptr, false);
  require(!s.field.recipe.is_discarded(), ErrorCode::Io, "corrupt recipe block in field file");
  for (auto& c : s.field.u) {
    c.resize(s.field.grid.size());
    for (double& v : c) v = get<double>(in);
  }
  require(s.field.all_finite(), ErrorCode::Io, "field file contains non-finite samples");
  return s;
}

}  // namespace nsreg
