// Copyright 2026 The avegen Authors.
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

// Pseudo-model that writes generations straight from gold records, either
// verbatim (copy mode) or with seeded, per-pair corruption. Lets decoding and
// scoring be checked end to end without a trained model.
//
// Noise procedure, per record i with stream_for(seed, i), per planned segment
// in target order, three draws are always taken (drop, attribute, value):
//   drop       -> segment omitted
//   attribute  -> attribute gets the suffix " noise"
//   value      -> word: value gets the suffix " noise";
//                 positional: span end grows by one token, else start shrinks
//                 by one, else (one-token title) the span points past the end

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avegen/core.hpp"
#include "avegen/encode.hpp"
#include "avegen/random.hpp"

namespace avegen {

struct NoiseSpec {
  double p_drop = 0.0;
  double p_attr = 0.0;
  double p_val = 0.0;

  bool is_copy() const noexcept {
    return p_drop == 0.0 && p_attr == 0.0 && p_val == 0.0;
  }
  void validate() const {
    for (double p : {p_drop, p_attr, p_val}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("noise rates must lie in [0, 1]");
      }
    }
  }
};

inline constexpr std::string_view kNoiseSuffix = " noise";

// Generation for the record at position `index` of its file. Records whose
// values cannot be encoded produce an empty generation.
inline std::string oracle_generate(const ProductRecord& record,
                                   std::size_t index, const NoiseSpec& noise,
                                   std::uint64_t seed,
                                   const EncodeOptions& opts) {
  TargetPlan plan;
  try {
    plan = plan_target(record, opts);
  } catch (const ValidationError&) {
    return {};
  }
  if (noise.is_copy()) return render_target(plan.segments, plan.paradigm);

  Rng rng = stream_for(seed, index);
  std::vector<TargetSegment> kept;
  for (auto& seg : plan.segments) {
    const bool drop = bernoulli(rng, noise.p_drop);
    const bool bad_attr = bernoulli(rng, noise.p_attr);
    const bool bad_val = bernoulli(rng, noise.p_val);
    if (drop) continue;
    if (bad_attr) seg.pair.attribute += kNoiseSuffix;
    if (bad_val) {
      if (plan.paradigm == Paradigm::WordSequence) {
        seg.pair.value += kNoiseSuffix;
      } else if (seg.span->end + 1 < plan.n_tokens) {
        ++seg.span->end;
      } else if (seg.span->start > 0) {
        --seg.span->start;
      } else {
        seg.span = TokenSpan{plan.n_tokens, plan.n_tokens};
      }
    }
    kept.push_back(std::move(seg));
  }
  return render_target(kept, plan.paradigm);
}

}  // namespace avegen
