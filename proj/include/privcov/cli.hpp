//
// Copyright 2026 The privcov Authors
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
//

#ifndef PRIVCOV_CLI_HPP_
#define PRIVCOV_CLI_HPP_

namespace privcov {

// Entry point behind the privcov binary. Exit codes: 0 success, 2 usage or
// parse error, 3 input validation error, 4 verdict or audit failure,
// 1 unexpected runtime failure.
int run_cli(int argc, const char* const* argv);

}  // namespace privcov

#endif  // PRIVCOV_CLI_HPP_
