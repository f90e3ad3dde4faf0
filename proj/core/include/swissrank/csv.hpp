// Copyright 2026 The swissrank Authors
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

#ifndef SWISSRANK_CSV_HPP_
#define SWISSRANK_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swissrank {

using CsvRow = std::vector<std::string>;

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line
// endings. Blank lines are skipped. Throws ParseError on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view text);

// Quotes the field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);
// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

// Strict full-string parse; nullopt-free, throws ParseError with `context`.
double parse_double(std::string_view text, std::string_view context);

std::string read_text_file(const std::filesystem::path& path);  // IoError
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace swissrank

#endif  // SWISSRANK_CSV_HPP_
