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

#pragma once

#include <string>

#include "fields/grid_field.hpp"

// Flat binary field format, all integers and floats little-endian:
//
//   offset  size  content
//   0       8     magic "NSRGFLD1"
//   8       4     u32 format version (1)
//   12      4     u32 n
//   16      8     f64 box length L
//   24      8     f64 time stamp
//   32      4     u32 flags (bit 0: solenoidal, bit 1: periodic)
//   36      4     u32 byte length m of the recipe JSON
//   40      m     recipe JSON (UTF-8)
//   40+m    ...   f64 samples: component 1, 2, 3, each n^3 values x-fastest

namespace nsreg {

struct StampedField {
  GridField field;
  double time = 0.0;
};

void write_field(const std::string& path, const GridField& field, double time = 0.0);
StampedField read_field(const std::string& path);

}  // namespace nsreg
