#!/usr/bin/env python3
"""Scores the sentiment oracle corpus with the reference rule-based tool.

Writes tests/data/sentiment_oracle.tsv: one "sentence<TAB>compound" row per
sentence, where compound is the unrounded score printed with repr() so the
C++ scorer can be compared at 1e-6 (in practice it agrees to the last bit).

Requires `pip install vaderSentiment==3.3.2`. The output file is committed;
this script only needs to be rerun if the corpus below changes.
"""
import pathlib

import vaderSentiment.vaderSentiment as vs

# polarity_scores() rounds the compound to 4 places; shadow round() inside the
# module so the raw normalized value comes through.
vs.round = lambda x, n=None: x

SENTENCES = [
    # migraine / medication domain
    "Botox was approved for migraines!! Slowly but surely i'm making my symptoms manageable/not constant",
    "The woman behind me @user didn't want her free chocolate chip cookie so she gave it to me! My day is looking up! On to my Botox injections! #EDS #lucky #winner #happy",
    "rizatriptan my beloved",
    "couldnt get all my work done yesterday because of a migraine so working extra hard today, pray for me",
    "The biggest health improvement since stopping hormonal birth control a year ago has been no more migraines.",
    "Do you feel it when they give you migraines? I usually wake up with that on weekends.",
    "high on a rizatriptan and deep throated leftover sushi. feeling: \U0001f979",
    "adulthood is preparing for migraines by taking ibuprofen the night before lmao",
    "These migraines Ain no ho",
    "Topamax made me feel like a zombie and I hated every minute of it.",
    "Aimovig has been a miracle for me, zero migraine days this month!",
    "Nurtec works great but the price is terrible.",
    "Imitrex is not bad at all, it knocks the pain out fast.",
    "I am SO tired of these migraines",
    "Emgality did absolutely nothing for me :(",
    "Ubrelvy is pretty good :)",
    "My neurologist is wonderful and really listens.",
    "I can't stand this awful headache anymore",
    "Propranolol helped a little, but the fatigue is horrible.",
    "Finally some relief after three days of pain.",
    "Qulipta gave me nausea and constipation, not worth it",
    "Maxalt is kind of helpful for my attacks",
    "The aura was terrifying and my vision was blurry",
    "Just got my first Vyepti infusion, hoping for the best!!!",
    "This migraine is killing me",
    "Sumatriptan injection works like magic",
    "I hate hate hate migraines",
    "I'm grateful my doctor finally prescribed Reyvow",
    "Amitriptyline makes me sleepy but it does help",
    "Worst migraine of my life, ER again",
    # boosters / dampeners and distance decay
    "The book was very good.",
    "The book was extremely very good.",
    "The service was barely acceptable.",
    "It was slightly annoying but mostly fine.",
    "The movie was really really bad.",
    "That was incredibly stupid",
    "The food was somewhat okay.",
    "She is a totally amazing friend.",
    "He was hardly helpful at all.",
    "The results were marginally better.",
    # capitalization emphasis
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "Today SUX!",
    "THIS IS ALL CAPS AND GREAT",
    "The weather is GOOD today",
    "I am VERY happy with this",
    "That was a HORRIBLE experience",
    # negation within the three-token window
    "VADER is not smart, handsome, nor funny.",
    "The pills are not good.",
    "This is not really good.",
    "I didn't think it was that great.",
    "Never have I ever felt so good.",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Without a doubt, excellent idea.",
    "Without a doubt, an excellent idea.",
    "At least it isn't a horrible book.",
    "It isn't horrible and it isn't great.",
    "Nobody was happy, nothing was fine.",
    "The doctor won't help me",
    "I wasn't sad, just tired.",
    # "no" handling
    "There is no problem here.",
    "No good deed goes unpunished.",
    "I have no hope or joy left",
    "no",
    # "least" handling
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "This is the least bad option.",
    "He is very least happy.",
    # "but" reweighting, including repeated valences
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "Today only kinda sux! But I'll get by, lol",
    "I love it but I hate it",
    "Good good good but bad",
    "It was fine but fine",
    "but",
    # kind of / sort of and idioms
    "The book was only kind of good.",
    "It was sort of nice.",
    "The plot is kind of boring",
    "With VADER, sentiment analysis is the shit!",
    "Most automated sentiment analysis tools are shit.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Not such a badass after all.",
    "This cake is to die for",
    "Yeah right, like that would work",
    "That was the kiss of death for the project",
    # punctuation amplification
    "Good!",
    "Good!!",
    "Good!!!!!!",
    "Is it good??",
    "Is it good????",
    "Why is it so bad???",
    "Awful!!!!",
    "good",
    "GOOD!!",
    # emoticons, emoji, edge cases
    "Make sure you :) or :D today!",
    "Catch utf-8 emoji such as \U0001f498 and \U0001f48b and \U0001f601",
    "feeling \U0001f622 today",
    "",
    "The meeting is at noon in room 4.",
]


def main():
    assert len(SENTENCES) == 100, len(SENTENCES)
    analyzer = vs.SentimentIntensityAnalyzer()
    out = pathlib.Path(__file__).resolve().parents[1] / "data" / "sentiment_oracle.tsv"
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        for s in SENTENCES:
            assert "\t" not in s and "\n" not in s
            compound = analyzer.polarity_scores(s)["compound"]
            f.write(f"{s}\t{compound!r}\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
