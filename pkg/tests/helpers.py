from chemhyper.generators import random_chemical, random_oriented


def oriented_ensemble(count, n=8, m=10, p_member=0.3, start=0):
    return [random_oriented(n, m, p_member, 0.5, seed=s) for s in range(start, start + count)]


def chemical_ensemble(count, n=8, m=10, p_catalyst=0.25, start=0):
    return [random_chemical(n, m, 0.35, 0.5, p_catalyst, seed=s) for s in range(start, start + count)]
