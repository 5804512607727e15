// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NILELAB_CLI_REPORT_IO_HPP_
#define NILELAB_CLI_REPORT_IO_HPP_

#include <string>
#include <string_view>

#include "nilelab/cli/config.hpp"
#include "nilelab/verify.hpp"

namespace nilelab::cli {

inline constexpr std::string_view kReportSchemaVersion = "1";

// JSON document described in docs/report_schema.md.
std::string report_json(const VerificationReport& report, const ExperimentConfig& config,
                        std::string_view reference);

// CSV table without the leading "# generated_at:" line; that line is added
// by csv_with_timestamp so the body stays deterministic.
std::string report_csv_body(const VerificationReport& report);
std::string csv_with_timestamp(const std::string& body);

// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

// 17 significant digits; empty for non-finite values.
std::string csv_number(double v);

}  // namespace nilelab::cli

#endif  // NILELAB_CLI_REPORT_IO_HPP_
