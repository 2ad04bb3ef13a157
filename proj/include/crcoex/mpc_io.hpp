// SPDX-License-Identifier: Apache-2.0
//
// crcoex - downlink multi-beam cognitive radio coexistence simulator
// Copyright (C) 2026 crcoex contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Text import/export of multipath components, the ingestion path for
// externally ray-traced channels.
//
// Format: UTF-8, '#' starts a comment, one header line per link followed by
// one MPC per line.
//
//   link pbs sbs        # five columns: gain_mag phase_rad delay_s dod_rad doa_rad
//   link pbs ue<N>      # four columns (UEs are omnidirectional)
//   link sbs ue<N>
//
// UE indices must densely cover 0..U-1 and each UE needs both of its link
// sections (they may be empty). Export writes full double precision so an
// export/import round trip is lossless.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crcoex/channel.hpp"

namespace crcoex
{

/// Per-link MPC lists parsed from one file.
struct MpcFileContent
{
    std::vector<MultipathComponent> pbs_to_sbs;
    std::vector<std::vector<MultipathComponent>> pbs_to_ue;
    std::vector<std::vector<MultipathComponent>> sbs_to_ue;

    int num_ues() const { return int(pbs_to_ue.size()); }
};

/// Parse an MPC file; throws ParseError with the offending line number on
/// malformed rows and ConfigError on structural problems.
MpcFileContent import_mpcs(std::istream &is);
MpcFileContent import_mpcs_file(const std::string &path);

/// Write the scenario's MPC sets in the same format.
void export_mpcs(const Scenario &scenario, std::ostream &os);
void export_mpcs_file(const Scenario &scenario, const std::string &path);

} // namespace crcoex
