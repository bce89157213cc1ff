"""
Deck-of-cards weighting session
===============================

A decision maker ranks criterion cards from least to most important,
slips blank cards in to widen gaps, and names how many times more the
top subset matters than the bottom one (z). That is the whole input.
"""

from catsd import DeckRanking, WeightElicitation, display_weights, srf_weights

# Commandos: physical fitness at the bottom, a big middle block, then
# intelligence, with personality and medical aptitude weighing most; one
# blank card after each of the first two subsets.
ranking = DeckRanking(
    [["PF"], ["NR", "SA", "MechR", "VP", "PmA"], ["Intel"], ["Pers", "Med"]],
    blanks=[1, 1, 0],
)

weights = srf_weights(WeightElicitation(ranking, z=4))
print("z = 4:", display_weights(weights))

# The same placement with a stronger top-to-bottom ratio stretches the
# scale but keeps every gap proportional.
for z in (6, 10):
    shown = display_weights(srf_weights(WeightElicitation(ranking, z)))
    print(f"z = {z}:", shown)

# Moving a blank card changes only the gaps it sits between.
wider = DeckRanking(ranking.subsets, blanks=[3, 1, 0])
print("wider first gap:", display_weights(srf_weights(WeightElicitation(wider, z=4))))
