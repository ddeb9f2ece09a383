"""Mine a strategy model from several scripted inspection sessions.

Three simulated experts inspect the same scene with slightly different
habits; mining recovers the consensus order, the frequent sub-sequences,
and the attention profile.

Run: python3 demos/03_mining_strategies.py
"""

import json
import tempfile

from sitewalk import AgentScript, Stop, run_script
from sitewalk.capture import sequence_from_log
from sitewalk.demo import demo_config, demo_scene
from sitewalk.mining import build_strategy_model, export_knowledge_graph
from sitewalk.service import SessionService

EXPERTS = [
    AgentScript((Stop("E1", 7.5), Stop("A1", 4.0), Stop("S1", 2.0), Stop("R1", 2.5))),
    AgentScript((Stop("E1", 8.0), Stop("A1", 4.5), Stop("S1", 1.5), Stop("R1", 2.0))),
    AgentScript((Stop("E1", 8.5), Stop("S1", 2.0), Stop("A1", 3.5), Stop("R1", 2.0))),
]


def main():
    scene = demo_scene()
    with tempfile.TemporaryDirectory() as tmp:
        service = SessionService(tmp)
        service.add_scene(scene)
        sequences = []
        for i, script in enumerate(EXPERTS):
            sid = run_script(service, demo_config(), script, f"expert{i}")
            sequence = sequence_from_log(service.session_log_path(sid))
            sequences.append(sequence)
            print(f"expert{i}: {' -> '.join(sequence.object_ids)}")

    model = build_strategy_model(sequences, scene.name, min_support=2, max_len=4)

    print("\ndirectly-follows edges:")
    for (a, b), count in sorted(model.dfg.edge_count.items()):
        print(f"  {a} -> {b}  x{count}")

    print("\nfrequent patterns (support >= 2):")
    for pattern in model.patterns:
        print(f"  {' -> '.join(pattern.pattern):<24} support {pattern.support}")

    print("\ncanonical order:", " -> ".join(model.canonical_order))
    print("\nattention profile:")
    for object_id, stats in model.attention.items():
        bar = "#" * round(stats.weight * 40)
        print(f"  {object_id:<3} mean dwell {stats.mean_dwell:5.2f} s  "
              f"weight {stats.weight:.3f} {bar}")

    graph = export_knowledge_graph(model, scene)
    print(f"\nknowledge graph: {len(graph['nodes'])} nodes, {len(graph['edges'])} edges")
    print(json.dumps(graph["edges"][:4], indent=2))


if __name__ == "__main__":
    main()
