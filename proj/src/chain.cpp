// Copyright 2026 The kqfi Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kqfi/chain.hpp"

#include <cmath>
#include <sstream>

#include "kqfi/error.hpp"

namespace kqfi {

void ChainParams::validate() const {
    KQFI_REQUIRE(L >= 2, InvalidArgument, "chain needs L >= 2, got " + describe());
    KQFI_REQUIRE(std::isfinite(J) && J > 0.0, InvalidArgument,
                 "chain needs finite J > 0, got " + describe());
    KQFI_REQUIRE(std::isfinite(gamma) && std::isfinite(h), InvalidArgument,
                 "non-finite gamma or h in " + describe());
    if (!uniform()) {
        KQFI_REQUIRE(site_fields.size() == static_cast<std::size_t>(L),
                     InvalidArgument,
                     "site_fields has length " +
                         std::to_string(site_fields.size()) + " but L = " +
                         std::to_string(L));
        for (double hj : site_fields) {
            KQFI_REQUIRE(std::isfinite(hj), InvalidArgument,
                         "non-finite entry in site_fields");
        }
    }
}

std::string ChainParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "ChainParams{L=" << L << ", J=" << J << ", gamma=" << gamma
       << ", h=" << h;
    if (!uniform()) {
        os << ", site_fields[" << site_fields.size() << "]";
    }
    os << "}";
    return os.str();
}

void check_site(const ChainParams &params, int site, const char *what) {
    KQFI_REQUIRE(site >= 1 && site <= params.L, InvalidArgument,
                 std::string(what) + " site " + std::to_string(site) +
                     " outside 1.." + std::to_string(params.L));
}

} // namespace kqfi
