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

#ifndef PROSODY_FEATURES_H_
#define PROSODY_FEATURES_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace prosody {

// Frame x channel spectrogram-like matrix, row-major.
struct AudioFeatures {
  std::size_t frames = 0;
  std::size_t channels = 0;
  double frame_rate = 0.0;  // frames per second
  std::vector<float> values;

  AudioFeatures() = default;
  AudioFeatures(std::size_t frames, std::size_t channels, double frame_rate)
      : frames(frames), channels(channels), frame_rate(frame_rate),
        values(frames * channels, 0.0f) {}

  float& at(std::size_t frame, std::size_t channel) { return values[frame * channels + channel]; }
  float at(std::size_t frame, std::size_t channel) const {
    return values[frame * channels + channel];
  }
  double Duration() const { return frame_rate > 0 ? static_cast<double>(frames) / frame_rate : 0; }
  // First frame whose start time is at or after `t`.
  std::size_t FrameAt(double t) const;
  bool AllFinite() const;
};

// Binary layout, little-endian:
//   "PRFT" | u32 version=1 | u32 frames | u32 channels | f64 frame_rate |
//   f32 values[frames * channels]
void WriteFeatures(std::ostream& out, const AudioFeatures& f);
AudioFeatures ReadFeatures(std::istream& in);
void SaveFeatures(const std::string& path, const AudioFeatures& f);
AudioFeatures LoadFeatures(const std::string& path);

}  // namespace prosody

#endif  // PROSODY_FEATURES_H_
