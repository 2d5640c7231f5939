"""Benchmark: compiled query kernel vs the pure-Python fallback.

The query path dominates model selection (100 grid cells, leave-one-out
over sequences, one ranked query per position), so this times raw
distribution/suggestion throughput at a few corpus scales and a full
grid search at fixture scale.

Run: python benchmarks/bench_lm.py
"""

from __future__ import annotations

import random
import time

from s2r_engine.lm import NgramModel
from s2r_engine.lm._knpure import KnKernel as PureKernel
from s2r_engine.lm.backend import KnKernel as SelectedKernel, kernel_backend
from s2r_engine.predictor import select_model


def synthetic_corpus(seed: int, vocab_size: int, n_seq: int, length: int):
    rng = random.Random(seed)
    vocab = [f"Screen{i % 7}.CLICK.Widget.e{i}" for i in range(vocab_size)]
    return [
        tuple(rng.choice(vocab) for _ in range(rng.randint(length // 2, length)))
        for _ in range(n_seq)
    ]


def time_queries(model: NgramModel, contexts, repeat: int) -> tuple[float, float]:
    start = time.perf_counter()
    for _ in range(repeat):
        for context in contexts:
            model.next_distribution(context)
    dist_rate = repeat * len(contexts) / (time.perf_counter() - start)
    start = time.perf_counter()
    for _ in range(repeat):
        for context in contexts:
            model.suggest(context, 10)
    topk_rate = repeat * len(contexts) / (time.perf_counter() - start)
    return dist_rate, topk_rate


def bench_kernels() -> None:
    print(f"selected backend: {kernel_backend()}")
    if SelectedKernel is PureKernel:
        print("compiled kernel unavailable; benchmarking the fallback against itself")
    scales = [(30, 12, 20), (120, 40, 30), (400, 150, 25)]
    header = f"{'vocab':>6} {'seqs':>5} {'backend':>8} {'dist/s':>10} {'topk/s':>10}"
    print(header)
    print("-" * len(header))
    for vocab_size, n_seq, length in scales:
        corpus = synthetic_corpus(1, vocab_size, n_seq, length)
        rng = random.Random(2)
        flat = [t for seq in corpus for t in seq]
        contexts = [
            [rng.choice(flat) for _ in range(rng.randint(0, 5))] for _ in range(200)
        ]
        repeat = max(1, 4000 // len(contexts))
        for label, kernel_cls in (("cython", SelectedKernel), ("python", PureKernel)):
            if kernel_cls is PureKernel and label == "cython":
                continue
            model = NgramModel.train(corpus, order=5, kernel_cls=kernel_cls)
            dist_rate, topk_rate = time_queries(model, contexts, repeat)
            print(
                f"{vocab_size:>6} {n_seq:>5} {label:>8} {dist_rate:>10.0f} {topk_rate:>10.0f}"
            )


def bench_selection_walk() -> None:
    """The selection workload itself: per order, leave one sequence out,
    rank the top 10 continuations at every position of the held-out one."""
    corpus = synthetic_corpus(3, 60, 15, 25)
    print("\nselection-shaped walk (orders 1-10, leave-one-out, top-10 per position):")
    for label, kernel_cls in (("cython", SelectedKernel), ("python", PureKernel)):
        if kernel_cls is PureKernel and label == "cython":
            continue
        start = time.perf_counter()
        queries = 0
        for order in range(1, 11):
            for held in range(len(corpus)):
                training = [s for i, s in enumerate(corpus) if i != held]
                model = NgramModel.train(training, order=order, kernel_cls=kernel_cls)
                held_out = corpus[held]
                for i in range(1, len(held_out)):
                    model.suggest(held_out[:i], 10)
                    queries += 1
        elapsed = time.perf_counter() - start
        print(f"  {label:>7}: {elapsed:6.2f}s ({queries / elapsed:,.0f} ranked queries/s)")


if __name__ == "__main__":
    bench_kernels()
    bench_selection_walk()
