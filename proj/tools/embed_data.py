#!/usr/bin/env python3
"""Regenerates include/mrnaco/data/bundled.hpp from the files in data/."""

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FILES = [
    ("kHumanCodonTable", "h_sapiens_9606.csv"),
    ("kTurner2004Params", "turner2004_nn.par"),
]

parts = [
    "#pragma once\n",
    "\n",
    "// Bundled default data files (mirrors of data/*.csv and data/*.par).\n",
    "// Regenerate with tools/embed_data.py after editing data/.\n",
    "\n",
    "#include <string_view>\n",
    "\n",
    "namespace mrnaco::bundled {\n",
]
for name, filename in FILES:
    text = (ROOT / "data" / filename).read_text()
    if ')mrnaco"' in text:
        raise SystemExit(f"{filename} contains the raw-string delimiter")
    parts.append(f'\ninline constexpr std::string_view {name} = R"mrnaco({text})mrnaco";\n')
parts.append("\n}  // namespace mrnaco::bundled\n")
(ROOT / "include" / "mrnaco" / "data" / "bundled.hpp").write_text("".join(parts))
