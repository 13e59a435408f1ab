"""Where does the caterpillar upper bound overtake the tree bound on
P_n with k pendants per center?  Prints the first odd n for each (k, q)."""

from zqforce.bounds import compare_tree_vs_corona_bound


def crossover(k, q, limit=10_001):
    for n in range(3, limit, 2):
        if compare_tree_vs_corona_bound(n, k, q)["better"] == "caterpillar":
            return n
    return None


if __name__ == "__main__":
    print("k,q,first_odd_n_where_caterpillar_wins")
    for k in (2, 3, 5, 10):
        for q in (2, 3, 4):
            print(f"{k},{q},{crossover(k, q)}")
