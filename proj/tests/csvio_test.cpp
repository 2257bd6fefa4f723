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

#include "d2dcache/csvio.hpp"

#include <sstream>

#include "doctest.h"

using namespace d2dcache;

TEST_CASE("format_float uses nine significant digits") {
  CHECK(format_float(0.5) == "0.5");
  CHECK(format_float(1.0 / 3.0) == "0.333333333");
  CHECK(format_float(123456789.123) == "123456789");
}

TEST_CASE("parse_trace") {
  SUBCASE("accepts comments, blanks and whitespace separation") {
    std::istringstream in(
        "# contact trace\n"
        "\n"
        "0 1 0.0 10.5\n"
        "2 0\t20 30\n");
    const ContactTrace trace = parse_trace(in, "test");
    REQUIRE(trace.records.size() == 2);
    CHECK(trace.n_users == 3);
    CHECK(trace.records[0].t_end == 10.5);
    CHECK(trace.records[1].user_a == 2);
  }
  SUBCASE("reports malformed lines by number") {
    std::istringstream in(
        "0 1 0 10\n"
        "0 1 nonsense 10\n");
    CHECK_THROWS_WITH_AS(parse_trace(in, "trace.txt"),
                         doctest::Contains("trace.txt:2"), std::runtime_error);
  }
  SUBCASE("rejects extra fields") {
    std::istringstream in("0 1 0 10 99\n");
    CHECK_THROWS_WITH_AS(parse_trace(in, "t"), doctest::Contains("t:1"),
                         std::runtime_error);
  }
  SUBCASE("rejects reversed times") {
    std::istringstream in("0 1 10 5\n");
    CHECK_THROWS_AS(parse_trace(in, "t"), std::runtime_error);
  }
  SUBCASE("comment-only input has no records") {
    std::istringstream in("# nothing here\n");
    CHECK_THROWS_WITH_AS(parse_trace(in, "t"), doctest::Contains("no records"),
                         std::runtime_error);
  }
}

TEST_CASE("mobility CSV round-trip") {
  MobilityModel m(3);
  m.set_pair(0, 1, {0.02, 0.005});
  m.set_pair(0, 2, PairParams::no_contact());
  m.set_pair(1, 2, {1.0 / 300.0, 1.0 / 1500.0});
  std::ostringstream out;
  write_mobility_csv(out, m);
  std::istringstream in(out.str());
  const MobilityModel back = read_mobility_csv(in, "mob.csv");
  CHECK(back.n_users() == 3);
  CHECK(back.pair(0, 1).contact_rate == doctest::Approx(0.02));
  CHECK_FALSE(back.pair(0, 2).has_contact());
  CHECK(back.pair(1, 2).intercontact_rate ==
        doctest::Approx(1.0 / 1500.0).epsilon(1e-9));
}

TEST_CASE("placement CSV round-trip") {
  CachePlacement placement(3, 4);
  placement.set(0, 1, true);
  placement.set(2, 3, true);
  std::ostringstream out;
  write_placement_csv(out, placement);
  CHECK(out.str().rfind("user,file\n", 0) == 0);
  std::istringstream in(out.str());
  const CachePlacement back = read_placement_csv(in, 3, 4, "p.csv");
  CHECK(back == placement);
}
