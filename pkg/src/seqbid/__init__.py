"""Optimal and budget-feasible bidding in sequential first-price auctions."""
from .additive import AStrategy, additive_state_count, solve_additive
from .budget import (ProratedStrategy, TrivialPolicy, max_future_payment, prepayment,
                     solve_prorated, trivial_policy)
from .errors import (CapacityError, ConfigError, DomainError, MismatchError, SequencingError,
                     ValidationError)
from .evaluation import (AdditiveUtility, EvalReport, FunctionPolicy, MCReport, brute_force_optimal,
                         exact_eval, monte_carlo, zero_policy)
from .generators import gen_substitutes, gen_three_bundles, two_item_example
from .model import (BundleMax, ExplicitTable, MoneyUtility, OpponentBidModel, ProblemInstance,
                    evaluate_valuation, max_meaningful_bid, validate_instance, win_probability)
from .quasilinear import QState, QStrategy, bid_upper_bound, q_value, solve_quasilinear

__version__ = "0.1.0"
