# SPDX-License-Identifier: Apache-2.0
#
# losmimo: capacity and outage analysis for line-of-sight MIMO satellite links
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Python bindings for the losmimo C++ library."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, verify_json


def verify(n_t=8, n_r=8, trials=100000, seed=42):
    """Run the oracle suite and return its report as a dict."""
    return _json.loads(verify_json(n_t=n_t, n_r=n_r, trials=trials, seed=seed))
