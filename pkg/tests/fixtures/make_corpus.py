"""Regenerate corpus.conllu: seeded English sentences with gold UD v2 parses.

Trees are assembled from head/dependent nodes, so every parse is projective
and correct by construction. Run from anywhere:

    python tests/fixtures/make_corpus.py
"""

import random
from dataclasses import dataclass, field
from pathlib import Path

SEED = 20221
N_SENTENCES = 150

DETS = ["the", "a", "this", "every", "some"]
POSS = ["his", "her", "their", "our"]
ADJS = ["old", "quiet", "young", "bright", "small", "famous", "careful", "strange", "happy", "local", "tired", "new"]
INTENSIFIERS = ["very", "quite", "rather", "surprisingly", "really"]
PEOPLE = ["man", "woman", "teacher", "doctor", "student", "farmer", "writer", "child", "pilot", "artist", "neighbour"]
THINGS = ["book", "letter", "car", "house", "song", "picture", "garden", "river", "city", "movie", "report", "window"]
PLACES = ["village", "station", "market", "library", "harbour", "museum", "park", "school", "hospital"]
NOUN_MODIFIERS = ["school", "city", "family", "news", "train"]
PRONOUNS = ["she", "he", "they", "we"]
OBJ_PRONOUNS = ["him", "her", "them", "us"]
INTRANS = ["arrived", "slept", "laughed", "waited", "smiled", "left", "worked", "returned", "stayed"]
TRANS = ["read", "wrote", "found", "painted", "repaired", "visited", "watched", "opened", "sold", "bought"]
DITRANS = ["gave", "sent", "showed", "offered", "handed"]
SVOC_VERBS = ["made", "kept", "considered", "found"]
PARTICIPLE_OK = {"arrived", "waited", "smiled", "left", "worked", "returned", "stayed", "found", "painted",
                 "repaired", "visited", "watched", "opened", "sold", "bought", "sent", "showed", "offered",
                 "handed", "made", "kept", "considered"}
VERB_ADVS = ["quickly", "slowly", "often", "suddenly", "finally", "quietly", "carefully"]
PREPS = ["in", "near", "behind", "after", "before", "from", "at"]
TIME_WORDS = ["yesterday", "today", "tonight"]
SAY_VERBS = ["said", "thought", "noticed", "believed"]
NUMBERS = ["two", "three", "four"]


@dataclass
class Node:
    word: str
    rel: str
    left: list = field(default_factory=list)
    right: list = field(default_factory=list)


def linearize(root):
    """Return ``[(surface, head, deprel)]`` rows in surface order."""
    order = []

    def walk(node, parent):
        for child in node.left:
            walk(child, node)
        order.append((node, parent))
        for child in node.right:
            walk(child, node)

    walk(root, None)
    index = {id(node): i for i, (node, _) in enumerate(order, start=1)}
    return [(n.word, index[id(p)] if p is not None else 0, n.rel) for n, p in order]


class Grammar:
    def __init__(self, rng):
        self.rng = rng

    def chance(self, p):
        return self.rng.random() < p

    def pick(self, seq):
        return self.rng.choice(seq)

    def np(self, rel, nouns, allow_pp=True, depth=0):
        noun = Node(self.pick(nouns), rel)
        if self.chance(0.15) and nouns is THINGS:
            noun.word = noun.word[:-1] + "ies" if noun.word.endswith("ty") else noun.word + "s"
            noun.left.append(Node(self.pick(NUMBERS), "nummod"))
        elif self.chance(0.2):
            noun.left.append(Node(self.pick(POSS), "nmod:poss"))
        else:
            noun.left.append(Node(self.pick(DETS), "det"))
        for word in self.rng.sample(ADJS, self.rng.choice([0, 0, 1, 1, 2])):
            adj = Node(word, "amod")
            if self.chance(0.3):
                adj.left.append(Node(self.pick(INTENSIFIERS), "advmod"))
            noun.left.append(adj)
        if self.chance(0.15):
            noun.left.append(Node(self.pick(NOUN_MODIFIERS), "compound"))
        if allow_pp and depth < 1 and self.chance(0.2):
            pp = self.np("nmod", PLACES, depth=depth + 1)
            pp.left.insert(0, Node("of", "case"))
            noun.right.append(pp)
        return noun

    def subject(self):
        if self.chance(0.3):
            return Node(self.pick(PRONOUNS), "nsubj")
        return self.np("nsubj", PEOPLE)

    def obl(self):
        pp = self.np("obl", PLACES)
        pp.left.insert(0, Node(self.pick(PREPS), "case"))
        return pp

    def verb_modifiers(self, verb, long=False):
        if self.chance(0.35):
            verb.right.append(Node(self.pick(VERB_ADVS), "advmod"))
        for _ in range(self.rng.choice([0, 1, 1, 2] + ([3, 4] if long else []))):
            verb.right.append(self.obl())
        if self.chance(0.2):
            tmod = Node(self.pick(TIME_WORDS), "obl:tmod")
            if self.chance(0.5):
                verb.left.insert(0, tmod)
            else:
                verb.right.append(tmod)

    def maybe_aux(self, verb):
        if verb.word in PARTICIPLE_OK and self.chance(0.25):
            verb.left.append(Node(self.pick(["had", "has"]), "aux"))

    def clause(self, rel="root", long=False):
        pattern = self.pick(["SV", "SVO", "SVO", "SVOO", "SVC", "SVOC"])
        subj = self.subject()
        if pattern == "SVC":
            pred = Node(self.pick(ADJS), rel)
            plural = subj.word in ("they", "we")
            cop = Node(self.pick(["are", "were"] if plural else ["is", "was"]), "cop")
            pred.left = [subj, cop]
            if self.chance(0.4):
                pred.left.append(Node(self.pick(INTENSIFIERS), "advmod"))
            if self.chance(0.4):
                pred.right.append(self.obl())
            return pred
        if pattern == "SV":
            verb = Node(self.pick(INTRANS), rel)
            verb.left.append(subj)
            self.maybe_aux(verb)
            self.verb_modifiers(verb, long)
            return verb
        if pattern == "SVO":
            verb = Node(self.pick(TRANS), rel)
            verb.left.append(subj)
            self.maybe_aux(verb)
            verb.right.append(self.np("obj", THINGS))
            self.verb_modifiers(verb, long)
            return verb
        if pattern == "SVOO":
            verb = Node(self.pick(DITRANS), rel)
            verb.left.append(subj)
            self.maybe_aux(verb)
            iobj = Node(self.pick(OBJ_PRONOUNS), "iobj") if self.chance(0.5) else self.np("iobj", PEOPLE, allow_pp=False)
            verb.right.extend([iobj, self.np("obj", THINGS, allow_pp=False)])
            self.verb_modifiers(verb, long)
            return verb
        verb = Node(self.pick(SVOC_VERBS), rel)
        verb.left.append(subj)
        verb.right.extend([self.np("obj", PEOPLE, allow_pp=False), Node(self.pick(ADJS), "xcomp")])
        self.verb_modifiers(verb, long)
        return verb

    def sentence(self):
        shape = self.rng.choices(
            ["simple", "long", "compound", "noun_clause", "relative", "adverbial"],
            weights=[50, 10, 15, 10, 8, 7],
        )[0]
        if shape in ("simple", "long"):
            root = self.clause(long=shape == "long")
        elif shape == "compound":
            root = self.clause()
            second = self.clause(rel="conj")
            second.left.insert(0, Node(self.pick(["and", "but"]), "cc"))
            root.right.append(second)
        elif shape == "noun_clause":
            root = Node(self.pick(SAY_VERBS), "root")
            root.left.append(self.subject())
            inner = self.clause(rel="ccomp")
            inner.left.insert(0, Node("that", "mark"))
            root.right.append(inner)
        elif shape == "relative":
            root = self.clause()
            host = next((n for n in root.left if n.rel == "nsubj" and n.word in PEOPLE), None)
            if host is not None:
                rel = Node(self.pick(INTRANS), "acl:relcl", left=[Node("who", "nsubj")])
                host.right.append(rel)
        else:
            root = self.clause()
            adv = self.clause(rel="advcl")
            adv.left.insert(0, Node(self.pick(["when", "because", "after"]), "mark"))
            root.right.append(adv)
        root.right.append(Node(".", "punct"))
        rows = linearize(root)
        for i in range(len(rows) - 1):
            if rows[i][0] == "a" and rows[i + 1][0][0] in "aeiou":
                rows[i] = ("an",) + rows[i][1:]
        w, h, r = rows[0]
        rows[0] = (w[0].upper() + w[1:], h, r)
        return rows


def detok(rows):
    out = rows[0][0]
    for w, _, _ in rows[1:]:
        out += w if w in ".,;:!?" else " " + w
    return out


def main():
    rng = random.Random(SEED)
    grammar = Grammar(rng)
    blocks = []
    for k in range(1, N_SENTENCES + 1):
        rows = grammar.sentence()
        lines = [f"# sent_id = c{k:03d}", f"# text = {detok(rows)}"]
        for i, (w, h, r) in enumerate(rows, start=1):
            lines.append("\t".join([str(i), w, "_", "_", "_", "_", str(h), r, "_", "_"]))
        blocks.append("\n".join(lines) + "\n")
    out = Path(__file__).with_name("corpus.conllu")
    out.write_text("\n".join(blocks), encoding="utf-8")
    print(f"wrote {N_SENTENCES} sentences to {out}")


if __name__ == "__main__":
    main()
