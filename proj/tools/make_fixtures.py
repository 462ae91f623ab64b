#!/usr/bin/env python3
"""Generates the synthetic fixture corpora under fixtures/.

    python3 tools/make_fixtures.py [--root fixtures]

Everything is derived from fixed seeds, so rerunning reproduces the committed
files byte for byte.

fixtures/reddit         302 labeled posts (226 self-reports, 76 not), a few
                        off-topic and duplicate records for ingest to drop,
                        author timelines and five annotators' labels.
fixtures/twitter        a smaller tweet-style corpus with timelines, for the
                        per-user median sentiment path.
fixtures/reddit_groups  externally scored Reddit posts whose medication
                        mentions add up to fixed per-group frequencies.
"""
import argparse
import datetime as dt
import json
import pathlib
import random

GROUP_TERMS = {
    "Topiramate": ["Topamax", "topiramate"],
    "Beta Blockers": ["propranolol", "Inderal", "metoprolol", "atenolol"],
    "Tricyclic antidepressants": ["amitriptyline", "Elavil", "nortriptyline", "Pamelor"],
    "OnabotulinumtoxinA": ["Botox", "botox"],
    "CGRP monoclonal antibodies": ["Aimovig", "Emgality", "Ajovy", "Vyepti"],
    "Gepants": ["Nurtec", "Ubrelvy", "Qulipta"],
    "Triptans": ["sumatriptan", "Imitrex", "Maxalt", "rizatriptan", "Relpax", "Zomig"],
}

# Frequencies of the Reddit medication groups the groups fixture must reproduce.
GROUP_FREQUENCIES = {
    "Topiramate": 32,
    "Beta Blockers": 18,
    "Tricyclic antidepressants": 30,
    "OnabotulinumtoxinA": 41,
    "CGRP monoclonal antibodies": 41,
    "Gepants": 39,
    "Triptans": 64,
}

POSITIVE_OPENERS = [
    "I've had a migraine since I woke up this morning.",
    "My migraine came back again today and I can barely see.",
    "I get migraines almost every week now.",
    "Woke up with another migraine, third one this week.",
    "I'm stuck in a dark room with a pounding migraine.",
    "My migraines have been getting worse since the weather changed.",
    "I had to leave work early because of my migraine.",
    "I've been dealing with chronic migraines for ten years.",
    "Migraine day for me, the aura started around noon.",
    "I can't stand the light right now, my migraine is brutal.",
    "Finally some relief after three days of migraine pain for me.",
    "My neurologist says my migraines are hormonal.",
    "My husband had to drive me home from work because of my migraine.",
    "My wife keeps the house quiet for me when my migraine hits.",
    "As a Black woman with migraines, I feel like doctors dismiss my pain.",
    "My boyfriend brought me ice packs, this migraine is rough.",
    "He told me to just sleep it off, but my migraine is not a headache.",
    "My daughter made me tea while I lay in bed with a migraine.",
]

POSITIVE_MED_SENTENCES = [
    "I started {med} last month and it has been a miracle for me.",
    "{med} did absolutely nothing for my migraines :(",
    "I took {med} and the pain was gone in an hour!",
    "{med} made me feel like a zombie and I hated it.",
    "My doctor switched me to {med} and I'm hopeful.",
    "I'm on {med} now, it's helping a little but the side effects are awful.",
    "Honestly {med} is the best thing that happened to my migraines.",
    "{med} works great for me but the price is terrible.",
    "I've tried {med} twice and it barely touched the pain.",
    "Just got my first {med} dose, hoping for the best!!",
]

NEGATIVE_TEXTS = [
    "New study links migraine to poor sleep quality in adults.",
    "Real-world study highlights increased healthcare utilization among Americans with episodic migraine.",
    "Ask your doctor whether {med} is right for you. Migraine relief is possible.",
    "{med} receives approval for the preventive treatment of migraine in adults.",
    "Researchers are testing whether {med} reduces migraine days in teenagers.",
    "Migraine awareness week starts Monday, share your resources.",
    "Is it true that chocolate can trigger migraines? Asking for a school project.",
    "The clinic now offers {med} injections for migraine patients on Fridays.",
    "Adulthood is preparing for migraines by taking ibuprofen the night before lmao",
    "A migraine is more than a headache, according to the foundation.",
    "Webinar tonight: managing migraine at work, with a neurologist panel.",
    "Press release: trial of {med} meets its primary endpoint in migraine prevention.",
    "My wife gets terrible migraines and I don't know how to help her.",
    "My brother had a migraine yesterday, he says {med} helps him.",
    "She says her migraine went away after {med}, glad she is better.",
    "My mom has had migraines for years and swears by {med}.",
    "His migraine kept him out of school all week.",
]

FILLER = [
    "Anyone else get this?",
    "The nausea is the worst part.",
    "Sleep is the only thing that helps.",
    "Thanks for reading.",
    "Drinking lots of water today.",
    "Hoping tomorrow is better.",
]

OFF_TOPIC = [
    "Just finished a long run along the river.",
    "What is everyone cooking this weekend?",
    "The new season of that show is great.",
    "My cat knocked over the plant again.",
]

TIMELINE_TEXTS = [
    "Made pancakes this morning.",
    "Another migraine today, skipping the gym.",
    "{med} helped a lot with this one!",
    "{med} gave me awful nausea this time.",
    "Work was fine, nothing special.",
    "Is it normal for {med} to take a few hours to work?",
    "Feeling good today, no migraine.",
]


def iso(ts):
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def post(platform, pid, author, created, text, label=None, subreddit=None):
    rec = {"platform": platform, "id": pid, "author_id": author, "created_at": iso(created), "text": text}
    if subreddit:
        rec["subreddit"] = subreddit
    if label is not None:
        rec["label"] = label
    return rec


def all_meds():
    return [m for terms in GROUP_TERMS.values() for m in terms]


def positive_text(rng, long_form):
    parts = [rng.choice(POSITIVE_OPENERS)]
    if rng.random() < 0.7:
        parts.append(rng.choice(POSITIVE_MED_SENTENCES).format(med=rng.choice(all_meds())))
    if long_form:
        parts.extend(rng.sample(FILLER, rng.randint(1, 2)))
    return " ".join(parts)


def negative_text(rng, long_form):
    parts = [rng.choice(NEGATIVE_TEXTS).format(med=rng.choice(all_meds()))]
    if long_form and rng.random() < 0.5:
        parts.append("More details in the link below.")
    return " ".join(parts)


def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def make_corpus(root, platform, n_pos, n_neg, seed, n_authors, long_form, annotate):
    rng = random.Random(seed)
    start = dt.datetime(2022, 1, 3, 8, 0, 0)
    authors = [f"{platform[0]}u{k:03d}" for k in range(n_authors)]
    labels = ["Y"] * n_pos + ["N"] * n_neg
    rng.shuffle(labels)
    sub = "migraine" if platform == "reddit" else None

    records = []
    for k, lab in enumerate(labels):
        created = start + dt.timedelta(minutes=37 * k + rng.randint(0, 30))
        # A few borderline items whose wording reads like the other class.
        looks_positive = (lab == "Y") != (rng.random() < 0.05)
        text = positive_text(rng, long_form) if looks_positive else negative_text(rng, long_form)
        records.append(post(platform, f"{platform[0]}{k:05d}", rng.choice(authors), created, text, lab, sub))

    raw = list(records)
    # Off-topic posts (dropped by the keyword filter) and repeated ids (dropped by dedup).
    for k, text in enumerate(OFF_TOPIC):
        raw.append(post(platform, f"{platform[0]}x{k:03d}", rng.choice(authors),
                        start + dt.timedelta(days=40, minutes=k), text, None, sub))
    for k in rng.sample(range(len(records)), 5):
        raw.append(dict(records[k]))
    write_jsonl(root / "raw_posts.jsonl", raw)

    # Timelines: each author's earlier and later posts, including the labeled ones.
    tl_rng = random.Random(seed + 1)
    by_author = {}
    for r in records:
        by_author.setdefault(r["author_id"], []).append({k: v for k, v in r.items() if k != "label"})
    tl_dir = root / "timelines"
    for old in tl_dir.glob("*.jsonl") if tl_dir.exists() else []:
        old.unlink()
    for a in sorted(by_author):
        items = list(by_author[a])
        for j in range(tl_rng.randint(2, 6)):
            created = start + dt.timedelta(days=tl_rng.randint(-60, 60), minutes=tl_rng.randint(0, 1439))
            text = tl_rng.choice(TIMELINE_TEXTS).format(med=tl_rng.choice(all_meds()))
            items.append(post(platform, f"{a}t{j:02d}", a, created, text, None, sub))
        items.sort(key=lambda r: (r["created_at"], r["id"]))
        write_jsonl(tl_dir / f"{a}.jsonl", items)

    if annotate:
        ann_rng = random.Random(seed + 2)
        names = ["ann1", "ann2", "ann3", "ann4", "ann5"]
        flip = [0.08, 0.10, 0.12, 0.10, 0.25]  # the fifth annotator agrees least
        with open(root / "annotations.csv", "w", encoding="utf-8", newline="\n") as f:
            f.write("id," + ",".join(names) + "\n")
            for r in records[:120]:
                cells = []
                for p in flip:
                    lab = r["label"]
                    if ann_rng.random() < p:
                        lab = "N" if lab == "Y" else "Y"
                    cells.append(lab)
                f.write(r["id"] + "," + ",".join(cells) + "\n")


def config(platform, extra):
    cfg = {
        "platform": platform,
        "seed": 13,
        "out": "out",
        "paths": {
            "raw_posts": "raw_posts.jsonl",
            "timelines": ".",
            "medications": "../../data/medications.txt",
            "smileys": "../../data/smileys.tsv",
            "abbreviations": "../../data/abbreviations.txt",
            "keyboard": "../../data/qwerty.tsv",
            "blocklist": "../../data/blocklist.txt",
            "swap_tables": "../../data/swap_tables.tsv",
            "sentiment_lexicon": "../../data/sentiment_lexicon.tsv",
            "emoji_lexicon": "../../data/emoji_lexicon.tsv",
        },
        "lexicon": {"misspelling_depth": 1},
        "split": {"train": 0.64, "validation": 0.16, "test": 0.20},
        "classifier": {"source": "native", "hyperparams": {"epochs": 10, "learning_rate": 0.5}},
        "evaluate": {"bootstrap_resamples": 1000, "level": 0.95},
        "bias": {"categories": ["gender", "race"], "sample_fraction": 1.0},
    }
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(cfg.get(k), dict):
            cfg[k].update(v)
        else:
            cfg[k] = v
    return cfg


def write_config(path, cfg):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(cfg, f, indent=2)
        f.write("\n")


SENTIMENT_SENTENCES = [
    "{med} has been amazing, I finally have good days again!",
    "{med} is working well for me so far.",
    "I am so grateful my doctor suggested {med}.",
    "{med} did nothing and I feel hopeless.",
    "{med} made me sick and miserable.",
    "I hate the side effects of {med}, terrible experience.",
    "Started {med} on Monday.",
    "{med} helps a little but the fatigue is awful.",
    "Not sure yet whether {med} is doing anything.",
]


def make_groups(root, seed):
    rng = random.Random(seed)
    start = dt.datetime(2022, 6, 1, 9, 0, 0)
    records, scores = [], []
    k = 0
    for group, freq in GROUP_FREQUENCIES.items():
        for _ in range(freq):
            med = rng.choice(GROUP_TERMS[group])
            text = "I have had migraines for years. " + rng.choice(SENTIMENT_SENTENCES).format(med=med)
            records.append(post("reddit", f"g{k:04d}", f"ru{rng.randint(0, 79):03d}",
                                start + dt.timedelta(minutes=13 * k), text, None, "migraine"))
            scores.append((f"g{k:04d}", round(rng.uniform(0.55, 0.99), 4)))
            k += 1
    # Negatively scored posts mention medications too but must not be counted.
    for _ in range(25):
        group = rng.choice(sorted(GROUP_TERMS))
        text = "Press release: " + rng.choice(GROUP_TERMS[group]) + " approved for migraine prevention."
        records.append(post("reddit", f"g{k:04d}", f"ru{rng.randint(0, 79):03d}",
                            start + dt.timedelta(minutes=13 * k), text, None, "migraine"))
        scores.append((f"g{k:04d}", round(rng.uniform(0.01, 0.45), 4)))
        k += 1
    # Positive posts without a medication contribute nothing.
    for _ in range(15):
        records.append(post("reddit", f"g{k:04d}", f"ru{rng.randint(0, 79):03d}",
                            start + dt.timedelta(minutes=13 * k), rng.choice(POSITIVE_OPENERS), None, "migraine"))
        scores.append((f"g{k:04d}", round(rng.uniform(0.55, 0.99), 4)))
        k += 1
    order = list(range(len(records)))
    rng.shuffle(order)
    write_jsonl(root / "raw_posts.jsonl", [records[i] for i in order])
    with open(root / "scores.csv", "w", encoding="utf-8", newline="\n") as f:
        f.write("platform,id,score\n")
        for i in order:
            f.write(f"reddit,{scores[i][0]},{scores[i][1]}\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=str(pathlib.Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    root = pathlib.Path(args.root)

    reddit = root / "reddit"
    reddit.mkdir(parents=True, exist_ok=True)
    make_corpus(reddit, "reddit", 226, 76, seed=302, n_authors=140, long_form=True, annotate=True)
    write_config(reddit / "config.json", config("reddit", {"paths": {"annotations": "annotations.csv"}}))

    twitter = root / "twitter"
    twitter.mkdir(parents=True, exist_ok=True)
    make_corpus(twitter, "twitter", 60, 140, seed=2612, n_authors=70, long_form=False, annotate=False)
    write_config(twitter / "config.json", config("twitter", {}))

    groups = root / "reddit_groups"
    groups.mkdir(parents=True, exist_ok=True)
    make_groups(groups, seed=64)
    cfg = config("reddit", {"classifier": {"source": "external"},
                            "paths": {"external_scores": "scores.csv"},
                            "report": {"sections": ["sentiment"]}})
    del cfg["paths"]["timelines"]
    cfg["classifier"].pop("hyperparams", None)
    write_config(groups / "config.json", cfg)


if __name__ == "__main__":
    main()
