// Copyright 2026 The qbcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QBCSIM_ERRORS_H_
#define QBCSIM_ERRORS_H_

#include <stdexcept>

namespace qbcsim {

// Invalid experiment or protocol configuration (a usage error in the CLI).
// Structural violations on states and operators throw std::domain_error.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qbcsim

#endif  // QBCSIM_ERRORS_H_
