// Copyright 2026 The SNI-Sim Authors.
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

#include "sni/parallel.h"

#include <cstdlib>
#include <string>

namespace sni {

size_t default_threads() {
    const char *env = std::getenv("SNI_THREADS");
    if (!env) {
        return 1;
    }
    try {
        long v = std::stol(env);
        return v > 0 ? size_t(v) : 1;
    } catch (...) {
        return 1;
    }
}

}  // namespace sni
