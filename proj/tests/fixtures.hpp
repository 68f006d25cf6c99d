// Copyright 2026 The DVP Authors.
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

#pragma once

#include <string_view>

#include "dvp/data_model.hpp"

namespace dvp::testing {

/// Birth and death rates plotted with a zero-growth reference line.
inline constexpr std::string_view kBirthDeathListing =
    "ELEMENT: point(position(birth*death), size(zero), label(country))\n"
    "ELEMENT: contour(position(smooth.density.kernel.epanechnikov.joint(birth*death)), "
    "color.hue())\n"
    "GUIDE  : form.line(position((0,0),(30,30)), label(\"Zero Population Growth\"))\n"
    "GUIDE  : axis(dim(1), label(\"Birth Rate\"))\n"
    "GUIDE  : axis(dim(2), label(\"Death Rate\"))\n";

inline DataSource birth_death_table() {
  return DataSource("rates", {Column::quantitative("birth", {35.2, 18.4, 11.1}),
                              Column::quantitative("death", {12.7, 8.9, 10.3}),
                              Column::categorical("country", {"Niger", "Chile", "Japan"})});
}

}  // namespace dvp::testing
