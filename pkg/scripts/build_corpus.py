# scripts/build_corpus.py

import sys
import os
from pathlib import Path

from tqdm import tqdm

sys.path.append(str(Path(__file__).resolve().parent.parent))

from burnlab.utils.config_loader import PROJECT_ROOT
from burnlab.utils.generators import complete, cycle, generate, gtilde, path, spider
from burnlab.utils.io_util import to_dot, write_graph

DATA_DIR = PROJECT_ROOT / "data" / "inputs"

GRAPHS = {
    "k1": lambda: path(1),
    "path9": lambda: path(9),
    "p10": lambda: path(10),
    "path10": lambda: path(10),
    "c4": lambda: cycle(4),
    "k5": lambda: complete(5),
    "gtilde": gtilde,
    "spider4": lambda: spider(4),
    "path25": lambda: generate("path", n=25),
}

INSTANCES = {
    "inst_456": [4, 5, 6],
    "inst_567": [5, 6, 7],
    "inst_678": [6, 7, 8],
    "inst_bad_sum": [4, 5, 7],
}


def main():
    print(f"Output Directory: {DATA_DIR}")
    if not os.path.exists(DATA_DIR):
        os.makedirs(DATA_DIR)
        print("   -> Directory created.")

    print("\n[1/2] Writing graph files...")
    for name, build in tqdm(GRAPHS.items(), desc="graphs"):
        G = build()
        write_graph(G, str(DATA_DIR / f"{name}.txt"))
        with open(DATA_DIR / f"{name}.dot", "w", encoding="utf-8") as f:
            f.write(to_dot(G, name=name))

    print("\n[2/2] Writing 3-partition instances...")
    for name, values in tqdm(INSTANCES.items(), desc="instances"):
        with open(DATA_DIR / f"{name}.txt", "w", encoding="utf-8") as f:
            f.write("\n".join(str(v) for v in values) + "\n")

    print(f"\nDone: {len(GRAPHS)} graphs, {len(INSTANCES)} instances.")


if __name__ == "__main__":
    main()
