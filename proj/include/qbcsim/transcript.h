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

#ifndef QBCSIM_TRANSCRIPT_H_
#define QBCSIM_TRANSCRIPT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbcsim {

enum class EventKind {
  kSend,
  kReturn,
  kRevealRequest,
  kReveal,
  kVerify,
  kModulate,
  kMeasure,
  kCommit,
  kOpen,
  kVerdict,
};

std::string_view EventKindName(EventKind kind);

struct TranscriptEvent {
  std::size_t stage = 0;
  EventKind kind = EventKind::kSend;
  std::string actor;
  std::string detail;
  std::optional<bool> accepted;
};

struct TranscriptSummary {
  std::optional<int> committed_bit;
  std::optional<int> opened_bit;
  // Bit Babe reads off the evidence at verification, when the protocol
  // lets her decode one.
  std::optional<int> decoded_bit;
  bool accepted = false;
  // Set only when Adam plays a cheating strategy.
  std::optional<bool> cheat_succeeded;
  // Set only when Babe keeps entanglement with the evidence.
  std::optional<bool> entanglement_survived;
};

// Append-only protocol log. Events carry the protocol stage index, which
// may not decrease. With recording disabled only the summary is kept,
// which bulk Monte Carlo runs use.
class Transcript {
 public:
  explicit Transcript(bool record = true) : record_(record) {}

  void Append(std::size_t stage, EventKind kind, std::string_view actor,
              std::string detail, std::optional<bool> accepted = {});

  bool recording() const { return record_; }
  const std::vector<TranscriptEvent>& events() const { return events_; }
  std::size_t last_stage() const { return last_stage_; }

  TranscriptSummary summary;

 private:
  bool record_;
  std::size_t last_stage_ = 0;
  std::vector<TranscriptEvent> events_;
};

}  // namespace qbcsim

#endif  // QBCSIM_TRANSCRIPT_H_
