// SPDX-License-Identifier: Apache-2.0
//
// cogbeam: robust transceiver beamforming for MIMO cognitive radio links
// Copyright (C) 2026 the cogbeam authors
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

#ifndef COGBEAM_COGBEAM_HPP
#define COGBEAM_COGBEAM_HPP

#include "cogbeam/allocation.hpp"
#include "cogbeam/beamformer.hpp"
#include "cogbeam/channel.hpp"
#include "cogbeam/config.hpp"
#include "cogbeam/hermitian.hpp"
#include "cogbeam/linalg.hpp"
#include "cogbeam/rng.hpp"
#include "cogbeam/sdp.hpp"
#include "cogbeam/simulate.hpp"
#include "cogbeam/underlay.hpp"

#endif // COGBEAM_COGBEAM_HPP
