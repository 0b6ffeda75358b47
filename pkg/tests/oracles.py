"""Independent brute-force reference implementations used to check metrics
and parsing. Everything here is written with naive enumeration on purpose;
none of it shares code with the package."""

import math


def all_symbol_texts():
    """Enumerate every legal (base, col, row) triple with its textual key."""
    table = {}
    for base in range(0x100, 0x38B + 1):
        for col in range(6):
            for row in range(16):
                table[f"S{base:03x}{col}{row:x}"] = (base, col, row)
    return table


def rank_by_counting(values):
    """Rank of each value: smaller values first, earlier positions break ties."""
    ranks = []
    for i, v in enumerate(values):
        smaller = sum(1 for w in values if w < v)
        earlier_equal = sum(1 for j in range(i) if values[j] == v)
        ranks.append(smaller + earlier_equal)
    return ranks


def _grams(seq, n):
    return [tuple(seq[i : i + n]) for i in range(len(seq) - n + 1)]


def oracle_bleu(hyps, refs):
    correct = [0] * 4
    total = [0] * 4
    hyp_len = sum(len(h) for h in hyps)
    ref_len = sum(len(r) for r in refs)
    for hyp, ref in zip(hyps, refs):
        for n in range(1, 5):
            hgrams = _grams(hyp, n)
            rgrams = _grams(ref, n)
            total[n - 1] += len(hgrams)
            for g in set(hgrams):
                correct[n - 1] += min(hgrams.count(g), rgrams.count(g))
    if hyp_len == 0 or correct[0] == 0:
        return 0.0
    logs = []
    smooth = 1.0
    for n in range(1, 5):
        if total[n - 1] == 0:
            break
        if correct[n - 1] == 0:
            smooth *= 2.0
            logs.append(math.log(1.0 / (smooth * total[n - 1])))
        else:
            logs.append(math.log(correct[n - 1] / total[n - 1]))
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    return 100.0 * bp * math.exp(sum(logs) / len(logs))


def oracle_chrf(hyps, refs, beta=2.0, char_order=6, word_order=0):
    orders = char_order + word_order
    stats = [[0, 0, 0] for _ in range(orders)]
    for hyp, ref in zip(hyps, refs):
        hyp_chars = "".join("".join(t.split()) for t in hyp)
        ref_chars = "".join("".join(t.split()) for t in ref)
        for n in range(1, char_order + 1):
            hgrams = _grams(hyp_chars, n)
            rgrams = _grams(ref_chars, n)
            stats[n - 1][0] += len(hgrams)
            stats[n - 1][1] += len(rgrams)
            stats[n - 1][2] += sum(
                min(hgrams.count(g), rgrams.count(g)) for g in set(hgrams)
            )
        for n in range(1, word_order + 1):
            hgrams = _grams(list(hyp), n)
            rgrams = _grams(list(ref), n)
            row = stats[char_order + n - 1]
            row[0] += len(hgrams)
            row[1] += len(rgrams)
            row[2] += sum(min(hgrams.count(g), rgrams.count(g)) for g in set(hgrams))
    precision = recall = 0.0
    effective = 0
    for h, r, o in stats:
        if h > 0 and r > 0:
            precision += o / h
            recall += o / r
            effective += 1
    if effective == 0:
        return 0.0
    precision /= effective
    recall /= effective
    if precision + recall == 0:
        return 0.0
    b2 = beta * beta
    return 100.0 * (1 + b2) * precision * recall / (b2 * precision + recall)


def oracle_mae(predicted, gold):
    length = max(len(predicted), len(gold))
    if length == 0:
        return 0.0
    acc = 0
    for i in range(length):
        p = predicted[i] if i < len(predicted) else 0
        g = gold[i] if i < len(gold) else 0
        acc += abs(p - g)
    return acc / length


def oracle_topn(nbest_lists, references, n):
    hits = 0
    for candidates, ref in zip(nbest_lists, references):
        found = False
        for i, cand in enumerate(candidates):
            if i >= n:
                break
            if cand == ref:
                found = True
        if found:
            hits += 1
    return hits / len(nbest_lists) if nbest_lists else 0.0
