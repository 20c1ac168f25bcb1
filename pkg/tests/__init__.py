# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Combined ratings tests."""
from combined_ratings.utils import get_etc_path

LEADERBOARD_CSV = get_etc_path('leaderboards', 'top20-2026-04-19.csv')
LEADERBOARD_JSON = get_etc_path('leaderboards', 'top20-2026-04-19.json')

# combined rank, classical rank, name, rounded combined rating
TOP20_COMBINED = [
    (1, 1, 'Carlsen, Magnus', 2848),
    (2, 2, 'Nakamura, Hikaru', 2795),
    (3, 8, 'Firouzja, Alireza', 2771),
    (4, 4, 'Abdusattorov, Nodirbek', 2760),
    (5, 11, 'Erigaisi, Arjun', 2757),
    (6, 3, 'Caruana, Fabiano', 2757),
    (7, 9, 'So, Wesley', 2756),
    (8, 19, 'Nepomniachtchi, Ian', 2741),
    (9, 24, 'Vachier-Lagrave, Maxime', 2739),
    (10, 21, 'Aronian, Levon', 2731),
    (11, 5, 'Sindarov, Javokhir', 2728),
    (12, 10, 'Wei, Yi', 2727),
    (13, 13, 'Duda, Jan-Krzysztof', 2724),
    (14, 59, 'Dubov, Daniil', 2721),
    (15, 32, 'Fedoseev, Vladimir', 2719),
    (16, 6, 'Giri, Anish', 2713),
    (17, 22, 'Nihal Sarin', 2712),
    (18, 77, 'Artemiev, Vladislav', 2708),
    (19, 44, 'Leko, Peter', 2707),
    (20, 15, 'Praggnanandhaa R', 2700),
]

CARLSEN = (2840, 2832, 2869)
GUKESH = (2732, 2692, 2646)
