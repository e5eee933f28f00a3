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

#ifndef PROSODY_ERROR_H_
#define PROSODY_ERROR_H_

#include <stdexcept>
#include <string>

namespace prosody {

// Malformed or inconsistent input data. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  InputError(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

// A label block or interleaved sequence that violates the codec grammar.
class DecodeError : public InputError {
 public:
  DecodeError(const std::string& message, std::size_t position)
      : InputError("label_codec", message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Numerical failure inside a model (non-finite logits, diverging loss).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& module, const std::string& message)
      : std::runtime_error(module + ": " + message) {}
};

}  // namespace prosody

#endif  // PROSODY_ERROR_H_
