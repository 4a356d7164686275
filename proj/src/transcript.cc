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

#include "qbcsim/transcript.h"

#include <stdexcept>

namespace qbcsim {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kSend: return "send";
    case EventKind::kReturn: return "return";
    case EventKind::kRevealRequest: return "reveal-request";
    case EventKind::kReveal: return "reveal";
    case EventKind::kVerify: return "verify";
    case EventKind::kModulate: return "modulate";
    case EventKind::kMeasure: return "measure";
    case EventKind::kCommit: return "commit";
    case EventKind::kOpen: return "open";
    case EventKind::kVerdict: return "verdict";
  }
  return "unknown";
}

void Transcript::Append(std::size_t stage, EventKind kind,
                        std::string_view actor, std::string detail,
                        std::optional<bool> accepted) {
  if (stage < last_stage_) {
    throw std::logic_error("transcript stage index went backwards");
  }
  last_stage_ = stage;
  if (!record_) return;
  events_.push_back({stage, kind, std::string(actor), std::move(detail),
                     accepted});
}

}  // namespace qbcsim
