#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The cegocd Authors
"""Writes fixtures/toy_kg.jsonl: a small hand-built academic knowledge graph.

Twelve papers (title nodes P1..P12) plus models, datasets and tasks. The file
deliberately contains one duplicate edge and one self-loop so that loaders
exercise their collapsing rules.
"""
import json
import pathlib

TITLES = {
    "P1": ("Graph Attention Networks for Question Answering",
           "Applies graph attention over entity graphs to answer multi-hop questions."),
    "P2": ("Sparse Attention Transformers for Long Document Summarization",
           "Introduces sparse attention patterns for summarizing long scientific documents."),
    "P3": ("Retrieval Augmented Generation for Open Domain Question Answering",
           "Combines dense passage retrieval with a sequence generator."),
    "P4": ("Pretraining Bidirectional Encoders for Language Understanding",
           "Masked language model pretraining for transfer learning."),
    "P5": ("Knowledge Graph Embeddings for Link Prediction",
           "Learns entity and relation embeddings for graph completion."),
    "P6": ("Abstractive Summarization with Pointer Generator Networks",
           "Copy mechanisms for abstractive news summarization."),
    "P7": ("Benchmarking Reading Comprehension Models",
           "A benchmark study of extractive reading comprehension systems."),
    "P8": ("Cross Lingual Transfer with Multilingual Encoders",
           "Zero shot transfer of multilingual pretrained encoders."),
    "P9": ("Efficient Attention Mechanisms Survey",
           "Surveys linear and sparse attention mechanisms for transformers."),
    "P10": ("Scientific Claim Verification with Evidence Retrieval",
            "Retrieves evidence sentences to verify scientific claims."),
    "P11": ("Dialogue State Tracking with Schema Guided Models",
            "Schema guided dialogue state tracking across services."),
    "P12": ("Neural Machine Translation with Attention",
            "Jointly learning to align and translate with attention."),
}

MODELS = {
    "Model-A": ("graph attention network", ["GAT"], "Attention over graph neighborhoods."),
    "Model-B": ("graph attention model", [], "A variant graph attention model for reasoning."),
    "Model-C": ("sparse attention transformer", ["sparse transformer"], "Transformer with sparse attention."),
    "Model-D": ("longformer encoder decoder", ["LED"], "Long document transformer."),
    "Model-E": ("dense passage retriever", ["DPR"], "Dual encoder retriever."),
    "Model-F": ("retrieval augmented generator", ["RAG"], "Generator conditioned on retrieved passages."),
    "Model-G": ("bidirectional encoder transformer", ["BERT"], "Masked language model encoder."),
    "Model-H": ("robustly optimized encoder", ["RoBERTa"], "Better tuned bidirectional encoder."),
    "Model-I": ("translational embedding model", ["TransE"], "Relations as translations."),
    "Model-J": ("bilinear diagonal embedding model", ["DistMult"], "Diagonal bilinear scoring."),
    "Model-K": ("pointer generator network", [], "Copy attention summarizer."),
    "Model-L": ("sequence to sequence attention model", ["seq2seq"], "Encoder decoder with attention."),
    "Model-M": ("bidirectional attention flow", ["BiDAF"], "Reading comprehension with attention flow."),
    "Model-N": ("multilingual encoder transformer", ["mBERT"], "Multilingual masked language model."),
    "Model-O": ("cross lingual language model", ["XLM"], "Cross lingual pretraining."),
    "Model-P": ("linear attention transformer", ["linformer"], "Low rank attention approximation."),
    "Model-Q": ("kernel attention transformer", ["performer"], "Random feature attention kernels."),
    "Model-R": ("evidence retrieval model", [], "Sentence level evidence retriever."),
    "Model-S": ("claim verification model", [], "Label prediction for claims."),
    "Model-T": ("schema guided state tracker", [], "Dialogue state tracker."),
    "Model-U": ("neural machine translation model", ["NMT"], "Attention based translator."),
    "Model-V": ("relational graph convolution network", ["RGCN"], "Relation aware graph convolution."),
    "Model-W": ("question answering reader model", [], "Extractive reader for questions."),
    "Model-X": ("abstractive summarization model", [], "Generic abstractive summarizer."),
}

DATASETS = {
    "Dataset-A": ("hotpot multi hop question answering dataset", ["HotpotQA"], "Multi hop questions over wikipedia."),
    "Dataset-B": ("natural questions answering dataset", ["NQ"], "Real search engine questions."),
    "Dataset-C": ("arxiv summarization dataset", [], "Long scientific papers with abstracts."),
    "Dataset-D": ("pubmed summarization dataset", [], "Biomedical articles with abstracts."),
    "Dataset-E": ("trivia question answering dataset", ["TriviaQA"], "Trivia questions with evidence."),
    "Dataset-F": ("glue language understanding benchmark", ["GLUE"], "Sentence level understanding tasks."),
    "Dataset-G": ("squad reading comprehension dataset", ["SQuAD"], "Extractive questions on wikipedia."),
    "Dataset-H": ("freebase link prediction benchmark", ["FB15k"], "Knowledge base completion."),
    "Dataset-I": ("wordnet link prediction benchmark", ["WN18RR"], "Lexical knowledge graph completion."),
    "Dataset-J": ("cnn dailymail summarization dataset", [], "News articles with highlights."),
    "Dataset-K": ("newsroom summarization corpus", [], "Diverse news summaries."),
    "Dataset-L": ("race reading comprehension dataset", ["RACE"], "Exam style comprehension."),
    "Dataset-M": ("xnli cross lingual inference dataset", ["XNLI"], "Multilingual natural language inference."),
    "Dataset-N": ("mlqa multilingual question answering dataset", ["MLQA"], "Multilingual extractive questions."),
    "Dataset-O": ("long range arena benchmark", ["LRA"], "Efficiency benchmark for attention."),
    "Dataset-P": ("scifact claim verification dataset", ["SciFact"], "Scientific claims with evidence."),
    "Dataset-Q": ("fever fact verification dataset", ["FEVER"], "Claims against wikipedia."),
    "Dataset-R": ("schema guided dialogue dataset", ["SGD"], "Multi domain dialogues."),
    "Dataset-S": ("multiwoz dialogue dataset", ["MultiWOZ"], "Task oriented dialogues."),
    "Dataset-T": ("wmt translation benchmark", ["WMT14"], "English German translation."),
    "Dataset-U": ("iwslt translation dataset", [], "Spoken language translation."),
    "Dataset-V": ("superglue language understanding benchmark", ["SuperGLUE"], "Harder understanding tasks."),
    "Dataset-W": ("qasper scientific question answering dataset", [], "Questions over NLP papers."),
    "Dataset-X": ("narrative reading comprehension dataset", ["NarrativeQA"], "Questions over stories."),
}

TASKS = {
    "Task-A": ("multi hop question answering", [], "Reasoning across documents."),
    "Task-B": ("open domain question answering", [], "Answering without a given passage."),
    "Task-C": ("long document summarization", [], "Summarizing long inputs."),
    "Task-D": ("abstractive summarization", [], "Generating novel summary text."),
    "Task-E": ("language understanding", [], "General natural language understanding."),
    "Task-F": ("link prediction", [], "Predicting missing graph edges."),
    "Task-G": ("reading comprehension", [], "Answering questions about a passage."),
    "Task-H": ("cross lingual transfer", [], "Transferring across languages."),
    "Task-I": ("efficient attention modeling", [], "Reducing attention cost."),
    "Task-J": ("claim verification", [], "Checking claims against evidence."),
    "Task-K": ("dialogue state tracking", [], "Tracking user goals in dialogue."),
    "Task-L": ("machine translation", [], "Translating between languages."),
    "Task-M": ("evidence retrieval", [], "Finding supporting sentences."),
    "Task-N": ("knowledge graph completion", [], "Adding missing facts to graphs."),
    "Task-O": ("extractive question answering", [], "Selecting answer spans."),
    "Task-P": ("natural language inference", [], "Entailment classification."),
    "Task-Q": ("scientific question answering", [], "Questions about research papers."),
    "Task-R": ("news summarization", [], "Summarizing news articles."),
}

# (paper, relation, target)
PAPER_EDGES = {
    "P1": [("proposes", "Model-A"), ("uses", "Model-B"), ("uses", "Model-V"),
           ("evaluated_on", "Dataset-A"), ("evaluated_on", "Dataset-E"),
           ("addresses", "Task-A"), ("addresses", "Task-B"), ("cites", "P4"), ("cites", "P12")],
    "P2": [("proposes", "Model-C"), ("uses", "Model-D"), ("evaluated_on", "Dataset-C"),
           ("evaluated_on", "Dataset-D"), ("addresses", "Task-C"), ("addresses", "Task-D"),
           ("cites", "P9"), ("cites", "P6")],
    "P3": [("proposes", "Model-F"), ("uses", "Model-E"), ("uses", "Model-G"),
           ("evaluated_on", "Dataset-B"), ("evaluated_on", "Dataset-E"), ("evaluated_on", "Dataset-W"),
           ("addresses", "Task-B"), ("addresses", "Task-Q"), ("cites", "P4"), ("cites", "P1")],
    "P4": [("proposes", "Model-G"), ("uses", "Model-H"), ("evaluated_on", "Dataset-F"),
           ("evaluated_on", "Dataset-G"), ("evaluated_on", "Dataset-V"),
           ("addresses", "Task-E"), ("addresses", "Task-O"), ("cites", "P12")],
    "P5": [("proposes", "Model-I"), ("uses", "Model-J"), ("uses", "Model-V"),
           ("evaluated_on", "Dataset-H"), ("evaluated_on", "Dataset-I"),
           ("addresses", "Task-F"), ("addresses", "Task-N")],
    "P6": [("proposes", "Model-K"), ("uses", "Model-L"), ("uses", "Model-X"),
           ("evaluated_on", "Dataset-J"), ("evaluated_on", "Dataset-K"),
           ("addresses", "Task-D"), ("addresses", "Task-R"), ("cites", "P12")],
    "P7": [("proposes", "Model-W"), ("uses", "Model-M"), ("uses", "Model-G"),
           ("evaluated_on", "Dataset-G"), ("evaluated_on", "Dataset-L"), ("evaluated_on", "Dataset-X"),
           ("addresses", "Task-G"), ("addresses", "Task-O"), ("cites", "P4"), ("cites", "P1")],
    "P8": [("proposes", "Model-O"), ("uses", "Model-N"), ("evaluated_on", "Dataset-M"),
           ("evaluated_on", "Dataset-N"), ("addresses", "Task-H"), ("addresses", "Task-P"),
           ("cites", "P4")],
    "P9": [("proposes", "Model-P"), ("uses", "Model-Q"), ("uses", "Model-C"),
           ("evaluated_on", "Dataset-O"), ("addresses", "Task-I"), ("cites", "P12"), ("cites", "P2")],
    "P10": [("proposes", "Model-S"), ("uses", "Model-R"), ("uses", "Model-H"),
            ("evaluated_on", "Dataset-P"), ("evaluated_on", "Dataset-Q"),
            ("addresses", "Task-J"), ("addresses", "Task-M"), ("addresses", "Task-Q"), ("cites", "P3")],
    "P11": [("proposes", "Model-T"), ("uses", "Model-G"), ("evaluated_on", "Dataset-R"),
            ("evaluated_on", "Dataset-S"), ("addresses", "Task-K")],
    "P12": [("proposes", "Model-U"), ("uses", "Model-L"), ("evaluated_on", "Dataset-T"),
            ("evaluated_on", "Dataset-U"), ("addresses", "Task-L")],
}

ELEMENT_EDGES = [
    ("Model-A", "variant_of", "Model-B"),
    ("Model-A", "trained_on", "Dataset-A"),
    ("Model-A", "applied_to", "Task-A"),
    ("Model-B", "applied_to", "Task-A"),
    ("Model-C", "variant_of", "Model-P"),
    ("Model-C", "trained_on", "Dataset-C"),
    ("Model-C", "applied_to", "Task-C"),
    ("Model-D", "trained_on", "Dataset-C"),
    ("Model-D", "applied_to", "Task-C"),
    ("Model-E", "trained_on", "Dataset-B"),
    ("Model-E", "applied_to", "Task-B"),
    ("Model-F", "trained_on", "Dataset-B"),
    ("Model-F", "applied_to", "Task-B"),
    ("Model-G", "trained_on", "Dataset-F"),
    ("Model-G", "applied_to", "Task-E"),
    ("Model-H", "variant_of", "Model-G"),
    ("Model-H", "applied_to", "Task-E"),
    ("Model-I", "trained_on", "Dataset-H"),
    ("Model-I", "applied_to", "Task-F"),
    ("Model-J", "trained_on", "Dataset-I"),
    ("Model-J", "applied_to", "Task-N"),
    ("Model-K", "trained_on", "Dataset-J"),
    ("Model-K", "applied_to", "Task-D"),
    ("Model-L", "applied_to", "Task-L"),
    ("Model-M", "trained_on", "Dataset-G"),
    ("Model-M", "applied_to", "Task-G"),
    ("Model-N", "variant_of", "Model-G"),
    ("Model-N", "trained_on", "Dataset-N"),
    ("Model-O", "trained_on", "Dataset-M"),
    ("Model-O", "applied_to", "Task-H"),
    ("Model-P", "applied_to", "Task-I"),
    ("Model-Q", "variant_of", "Model-P"),
    ("Model-Q", "trained_on", "Dataset-O"),
    ("Model-R", "applied_to", "Task-M"),
    ("Model-S", "trained_on", "Dataset-P"),
    ("Model-S", "applied_to", "Task-J"),
    ("Model-T", "trained_on", "Dataset-R"),
    ("Model-T", "applied_to", "Task-K"),
    ("Model-U", "trained_on", "Dataset-T"),
    ("Model-U", "applied_to", "Task-L"),
    ("Model-V", "applied_to", "Task-N"),
    ("Model-W", "trained_on", "Dataset-G"),
    ("Model-W", "trained_on", "Dataset-X"),
    ("Model-W", "applied_to", "Task-O"),
    ("Model-X", "trained_on", "Dataset-K"),
    ("Model-X", "applied_to", "Task-D"),
    ("Dataset-A", "benchmark_for", "Task-A"),
    ("Dataset-B", "benchmark_for", "Task-B"),
    ("Dataset-C", "benchmark_for", "Task-C"),
    ("Dataset-D", "benchmark_for", "Task-C"),
    ("Dataset-E", "benchmark_for", "Task-B"),
    ("Dataset-F", "benchmark_for", "Task-E"),
    ("Dataset-G", "benchmark_for", "Task-O"),
    ("Dataset-H", "benchmark_for", "Task-F"),
    ("Dataset-I", "benchmark_for", "Task-F"),
    ("Dataset-J", "benchmark_for", "Task-R"),
    ("Dataset-K", "benchmark_for", "Task-R"),
    ("Dataset-L", "benchmark_for", "Task-G"),
    ("Dataset-M", "benchmark_for", "Task-P"),
    ("Dataset-N", "benchmark_for", "Task-H"),
    ("Dataset-O", "benchmark_for", "Task-I"),
    ("Dataset-P", "benchmark_for", "Task-J"),
    ("Dataset-Q", "benchmark_for", "Task-J"),
    ("Dataset-R", "benchmark_for", "Task-K"),
    ("Dataset-S", "benchmark_for", "Task-K"),
    ("Dataset-T", "benchmark_for", "Task-L"),
    ("Dataset-U", "benchmark_for", "Task-L"),
    ("Dataset-V", "benchmark_for", "Task-E"),
    ("Dataset-W", "benchmark_for", "Task-Q"),
    ("Dataset-X", "benchmark_for", "Task-G"),
]


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "toy_kg.jsonl"
    lines = []

    def entity(eid, name, etype, desc, aliases):
        lines.append({"kind": "entity", "id": eid, "name": name, "type": etype,
                      "description": desc, "aliases": aliases})

    def relation(src, rel, dst):
        lines.append({"kind": "relation", "source": src, "target": dst, "type": rel})

    for pid, (name, desc) in TITLES.items():
        entity(pid, name, "Title", desc, [])
        for rel, dst in PAPER_EDGES[pid]:
            relation(pid, rel, dst)
    for table, etype in ((MODELS, "Model"), (DATASETS, "Dataset"), (TASKS, "Task")):
        for eid, (name, aliases, desc) in table.items():
            entity(eid, name, etype, desc, aliases)
    for src, rel, dst in ELEMENT_EDGES:
        relation(src, rel, dst)
    # Exercised by the loader: one exact duplicate and one self-loop.
    relation("P1", "proposes", "Model-A")
    relation("Model-G", "variant_of", "Model-G")

    with out.open("w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(json.dumps(line, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
