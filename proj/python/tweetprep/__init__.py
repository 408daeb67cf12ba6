# Copyright 2026 The tweetprep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the tweetprep C++ core."""

from ._core import (
    BadConfig,
    BpeModel,
    DataError,
    EmojiLexicon,
    Error,
    IGNORE_LABEL,
    IoFailure,
    block_seed,
    emoji_name,
    estimate_block_count,
    estimate_cost,
    extract_domain,
    mask_block,
    normalize_text,
    normalize_tweet,
    pack_blocks,
    render_causal_prompt,
    render_chat_messages,
    scan_entities,
    stratified_kfold,
    weighted_f1,
)

__all__ = [
    "BadConfig",
    "BpeModel",
    "DataError",
    "EmojiLexicon",
    "Error",
    "IGNORE_LABEL",
    "IoFailure",
    "block_seed",
    "emoji_name",
    "estimate_block_count",
    "estimate_cost",
    "extract_domain",
    "mask_block",
    "normalize_text",
    "normalize_tweet",
    "pack_blocks",
    "render_causal_prompt",
    "render_chat_messages",
    "scan_entities",
    "stratified_kfold",
    "weighted_f1",
]
