"""Loop time against edges, dimensions and skills (smaller than the tests)."""
from ubik.bench import sweep, to_csv
from ubik.synthgen import GenSpec

points = []
points += sweep(GenSpec(20_000, 2), "avg_degree", [2, 4, 8], series="edges")
points += sweep(GenSpec(10_000, 3), "n_dims", [1, 10, 40], series="dims")
points += sweep(GenSpec(10_000, 3), "n_skills", [5, 10, 20], series="skills")
print(to_csv(points))
