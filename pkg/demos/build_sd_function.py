"""
Building a similarity-dissimilarity function from answers
=========================================================

An SD function can be typed in as condition/value rows, but during
elicitation it is assembled from threshold probes and a deck-of-cards
placement of intermediate differences.
"""

from catsd import (
    Constant,
    DeckRanking,
    ThresholdSet,
    assemble_sd,
    deck_intensities,
    eval_sd,
    fit_affine_threshold,
    format_sd_rows,
)

# Threshold probing: "at reference level 70 a difference of 10 still
# feels similar; at level 135 it takes 20". Two probes pin the line.
t_prime = fit_affine_threshold(70, 10, 135, 20)
sign = "+" if t_prime.intercept >= 0 else "-"
print(f"t' = {t_prime.slope} * level {sign} {abs(t_prime.intercept)}")

# Constant thresholds come from probes with equal answers; here a full
# set for one reference level of a percentage-scale criterion.
thresholds = ThresholdSet(
    t=Constant(20), t_prime=Constant(15),
    u=Constant(30), u_prime=Constant(20),
    v=Constant(40), v_prime=Constant(30),
)

# Deck of cards inside the upper similarity zone: differences ranked
# from most similar to least, no blanks, so the intensity falls evenly.
ladder = deck_intensities(DeckRanking([["5"], ["10"], ["15"]], blanks=[0, 0]), "f3")
print("interior similarity steps:", {k: str(v) for k, v in ladder.items()})

knots = [(5.0, float(ladder[0])), (10.0, float(ladder[1])), (15.0, float(ladder[2]))]
function = assemble_sd(thresholds, reference_level=75, intensities={"f3": knots}, id="demo")

for condition, value in format_sd_rows(function):
    print(f"{condition:18} {value}")

# sanity: inside the similar zone the function interpolates the ladder
for delta in (0.0, 7.5, 20.0, 25.0, 35.0, 45.0):
    print(f"f({delta:5}) = {eval_sd(function, delta):+.3f}")
