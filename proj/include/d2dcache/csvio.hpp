// Copyright 2026 The Authors.
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

#ifndef D2DCACHE_CSVIO_HPP_
#define D2DCACHE_CSVIO_HPP_

#include <iosfwd>
#include <string>

#include "d2dcache/core.hpp"
#include "d2dcache/mobility.hpp"

namespace d2dcache {

/// Floats are written with 9 significant digits everywhere.
std::string format_float(double value);

/// Parses a contact trace: one `user_a user_b t_start t_end` record per line,
/// whitespace separated, `#` comments and blank lines ignored. Malformed
/// lines are reported with their line number, prefixed by `source_name`.
ContactTrace parse_trace(std::istream& in, const std::string& source_name);
ContactTrace load_trace(const std::string& path);

/// Pairwise rate matrix as CSV: header `user_a,user_b,lambda_c,lambda_i`,
/// one row per unordered pair with i < j; `inf,0` marks pairs without
/// contacts. Reading tolerates missing pairs (left as no-contact).
void write_mobility_csv(std::ostream& out, const MobilityModel& m);
MobilityModel read_mobility_csv(std::istream& in,
                                const std::string& source_name);

/// Placement as CSV: header `user,file`, one row per cached copy.
void write_placement_csv(std::ostream& out, const CachePlacement& placement);
CachePlacement read_placement_csv(std::istream& in, int n_users, int n_files,
                                  const std::string& source_name);

}  // namespace d2dcache

#endif  // D2DCACHE_CSVIO_HPP_
