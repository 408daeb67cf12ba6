// Copyright 2026 The tweetprep Authors
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

// Host parsing against a bundled public-suffix snapshot (ICANN section).

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tweetprep {

/// Host component of a URL: scheme, userinfo, port, path, query and fragment
/// stripped; a single trailing dot removed.
std::string_view url_host(std::string_view url);

/// Number of trailing labels of `host` that form its public suffix, using
/// the longest matching rule (exceptions and wildcards honoured, "*" as the
/// default). Matching is ASCII case-insensitive.
std::size_t public_suffix_labels(std::string_view host);

/// True when `tld` (a single label) is an explicit top-level rule.
bool is_known_tld(std::string_view tld);

/// The label directly left of the public suffix, or nullopt when the host
/// has no such label (single label, suffix-only host, IPv4 literal, empty
/// labels).
std::optional<std::string> registrable_label(std::string_view host);

/// "https://sub.example.co.uk/p?q=1" -> "example". Throws DomainUnparseable
/// when registrable_label() has nothing to return.
std::string extract_domain(std::string_view url);

}  // namespace tweetprep
