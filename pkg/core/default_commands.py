from core import ANALYZE, DEFAULT_C, DEFAULT_DELTA, DEFAULT_WIDTH, SENT, SIMULATE

"""Parameters every command accepts
"""
common = {
    'k': 100,
    'c': DEFAULT_C,
    'delta': DEFAULT_DELTA,
}

commands = {
    'analyze_reduced': {
        'type': ANALYZE,
        'aliases': ['reduced'],
        'method': 'reduced',
        'text': 'Probability of a redundant symbol against the number of decoded symbols.',
        'params': {**common, 'samples': 0, 'seed': 1},
    },
    'analyze_reduced_acked': {
        'type': ANALYZE,
        'aliases': ['reduced-acked'],
        'method': 'reduced_acked',
        'text': 'Probability of a redundant symbol against the number of ACK\'ed symbols, for L undecoded.',
        'params': {**common, 'L': 50},
    },
    'analyze_adaptive': {
        'type': ANALYZE,
        'aliases': ['adaptive'],
        'method': 'adaptive',
        'text': 'Adaptive degree distribution over L undecoded symbols next to the Robust Soliton.',
        'params': {**common, 'L': 50},
    },
    'analyze_two_layer': {
        'type': ANALYZE,
        'aliases': ['two-layer'],
        'method': 'two_layer',
        'text': 'Probability of a redundant symbol over the undecoded base and refinement counts.',
        'params': {**common, 'alpha': 0.5, 'beta': 9.0, 'step': 1, 'samples': 0, 'seed': 1},
    },
    'analyze_n_layer': {
        'type': ANALYZE,
        'aliases': ['n-layer'],
        'method': 'n_layer',
        'text': 'Joint reduced degree distribution of an N-layer code.',
        'params': {**common, 'k': 30, 'alphas': [0.2, 0.3, 0.5], 'weights': [9.0, 3.0, 1.0],
                   'undecoded': [2, 4, 8]},
    },
    'simulate_single': {
        'type': SIMULATE,
        'aliases': ['single'],
        'method': 'single',
        'text': 'Undecoded fraction against received symbols without feedback and with per-symbol ACKs.',
        'params': {**common, 'width': DEFAULT_WIDTH, 'runs': 100, 'seed': 1, 'threads': 0},
    },
    'simulate_two_layer': {
        'type': SIMULATE,
        'aliases': ['two-layer'],
        'method': 'two_layer',
        'text': 'Per-layer undecoded fractions of a two-layer code with and without a layer ACK.',
        'params': {**common, 'width': DEFAULT_WIDTH, 'alpha': 0.5, 'beta': 9.0, 'ack': 'both',
                   'reparameterize': True, 'runs': 100, 'seed': 1, 'threads': 0},
    },
    'simulate_distortion': {
        'type': SIMULATE,
        'aliases': ['distortion'],
        'method': 'distortion',
        'text': 'Mean video distortion against the symbol erasure rate with a 2k symbol deadline.',
        'params': {**common, 'width': DEFAULT_WIDTH, 'alpha': 0.5, 'beta': 9.0, 'ack': 'both',
                   'reparameterize': True, 'ser': '0:0.05:1', 'seconds': 100, 'seed': 1, 'threads': 0,
                   'deadline_basis': SENT},
    },
}
