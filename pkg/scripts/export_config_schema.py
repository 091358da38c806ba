#!/usr/bin/env python3
"""Write the JSON schemas of the experiment config and of the report models.

Usage:
  python scripts/export_config_schema.py [--out-dir schemas/]

One `<Model>.schema.json` per model; editors can point `$schema` at
RunConfig.schema.json to validate files under configs/.
"""
import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from qswlab.schemas import (  # noqa: E402
    ObservanceMetrics,
    PeriodicityReport,
    RunConfig,
    SpectralReportOut,
    SurveyRow,
    ThresholdResult,
)

MODELS = (RunConfig, SpectralReportOut, ThresholdResult, SurveyRow, ObservanceMetrics, PeriodicityReport)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=ROOT / "schemas")
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for model in MODELS:
        target = args.out_dir / f"{model.__name__}.schema.json"
        target.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        print(f"Wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
