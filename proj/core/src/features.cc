/*
 * Copyright 2026 The Prosody Tagger Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "prosody/features.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "prosody/error.h"

namespace prosody {
namespace {

static_assert(std::endian::native == std::endian::little, "feature files assume little-endian");

constexpr char kMagic[4] = {'P', 'R', 'F', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void Put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InputError("decode_harness", "truncated feature file");
  return v;
}

}  // namespace

std::size_t AudioFeatures::FrameAt(double t) const {
  if (t <= 0) return 0;
  auto f = static_cast<std::size_t>(std::ceil(t * frame_rate - 1e-9));
  return std::min(f, frames);
}

bool AudioFeatures::AllFinite() const {
  return std::all_of(values.begin(), values.end(), [](float v) { return std::isfinite(v); });
}

void WriteFeatures(std::ostream& out, const AudioFeatures& f) {
  out.write(kMagic, 4);
  Put<std::uint32_t>(out, kVersion);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(f.frames));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(f.channels));
  Put<double>(out, f.frame_rate);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(float)));
}

AudioFeatures ReadFeatures(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw InputError("decode_harness", "not a feature file");
  }
  if (Get<std::uint32_t>(in) != kVersion) {
    throw InputError("decode_harness", "unsupported feature file version");
  }
  auto frames = Get<std::uint32_t>(in);
  auto channels = Get<std::uint32_t>(in);
  AudioFeatures f(frames, channels, Get<double>(in));
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(float)));
  if (!in) throw InputError("decode_harness", "truncated feature file");
  if (!f.AllFinite()) throw InputError("decode_harness", "non-finite feature values");
  return f;
}

void SaveFeatures(const std::string& path, const AudioFeatures& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("decode_harness", "cannot write " + path);
  WriteFeatures(out, f);
}

AudioFeatures LoadFeatures(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("decode_harness", "cannot read " + path);
  return ReadFeatures(in);
}

}  // namespace prosody
