"""Fifteen lending scenario bundles with calibrated models and wording.

Each bundle packages a schema, a logistic model calibrated so the scenario's
stated decision boundary holds exactly, the customer profile, an action
catalog whose phrases match the scenario's directive wording, and the
scenario's authored explanation templates. Scenario 3 doubles as the
``lending-demo`` fixture used by the docs and the dashboard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..model import LinearModel
from ..planner import Action, ActionCatalog, Outcome
from ..schema import FeatureSchema, FeatureSpec

# Credit ratings map A..F to 1..6; lower is better.
RATING_LETTERS = {1: "A", 2: "B", 3: "C", 4: "D", 5: "E", 6: "F"}

_FEATURES = {
    "loan_amount": FeatureSpec("loan_amount", "continuous", (500, 40000), "$", "actionable", "free", step=100),
    "term": FeatureSpec("term", "ordinal", (36, 60), "months", "actionable", "free", values=(36, 60)),
    "interest_rate": FeatureSpec("interest_rate", "continuous", (5, 31), "%", "immutable", "free", step=0.5),
    "credit_rating": FeatureSpec(
        "credit_rating", "ordinal", (1, 6), "", "conditionally-mutable", "free", values=(1, 2, 3, 4, 5, 6), step=1
    ),
    "income": FeatureSpec("income", "continuous", (0, 200000), "$", "actionable", "increase-only", step=1000),
    "employment_years": FeatureSpec(
        "employment_years", "continuous", (0, 40), "years", "conditionally-mutable", "increase-only", step=1
    ),
    "num_credit_cards": FeatureSpec(
        "num_credit_cards", "ordinal", (0, 10), "", "actionable", "free", values=tuple(range(11)), step=1
    ),
    "total_credit_limit": FeatureSpec("total_credit_limit", "continuous", (0, 50000), "$", "actionable", "free", step=1000),
    "credit_limit": FeatureSpec("credit_limit", "continuous", (0, 20000), "$", "actionable", "free", step=1000),
    "num_inquiries": FeatureSpec(
        "num_inquiries", "ordinal", (0, 30), "", "actionable", "free", values=tuple(range(31)), step=1
    ),
    "credit_utilisation": FeatureSpec("credit_utilisation", "continuous", (0, 100), "%", "actionable", "free", step=1),
    "debt_to_income": FeatureSpec("debt_to_income", "continuous", (0, 100), "%", "actionable", "free", step=1),
    "num_defaults": FeatureSpec(
        "num_defaults", "ordinal", (0, 20), "", "conditionally-mutable", "free", values=tuple(range(21)), step=1
    ),
}


@dataclass(frozen=True)
class ScenarioBundle:
    scenario_id: int
    customer: str
    approved: bool
    schema: FeatureSchema
    model: LinearModel
    profile: Mapping[str, float]
    catalog: ActionCatalog
    templates: Mapping
    desired: int = 1  # the customer always wants an approval

    @property
    def grid_features(self) -> list[str]:
        return list(self.model.metadata["search"]["features"])

    @property
    def grid_steps(self) -> dict[str, float]:
        return dict(self.model.metadata["search"]["steps"])


# Each entry: profile, nonzero weights, bias, counterfactual search config,
# catalog actions, and the scenario's clause templates. Directive action
# clauses carry {action} / {class} slots filled from the plan's first action.
_SCENARIOS: list[dict] = [
    {
        "id": 1,
        "customer": "Judith",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "income"],
        "profile": {"loan_amount": 5600, "term": 60, "interest_rate": 21.5, "credit_rating": 6, "income": 30000},
        "weights": {"credit_rating": -2.0},
        "bias": 7.0,
        "grid": {"features": ["credit_rating"], "steps": {}},
        "actions": [
            {
                "name": "enable automatic deductions from your savings account to make the monthly credit card payments on time",
                "class_tag": "find strategies to ensure that you make the monthly credit card payments on time for the next six months",
                "cost": 2,
                "outcomes": [{"prob": 1.0, "effects": {"credit_rating": -3}}],
            }
        ],
        "global": "Hello Judith. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on your credit rating. You have a credit rating of F on a scale of A to F where A is an excellent rating and F is a poor rating.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, your credit rating needs to be better than your current credit rating of F.",
                "filler": "If you had a credit rating score of C, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, your credit rating needs to be C.",
                "action": "You could get a credit rating of C in six months if you were to {action}.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, your credit rating needs to be C.",
                "action": "To get a credit rating of C you need to {class}.",
            },
        },
    },
    {
        "id": 2,
        "customer": "Martin",
        "approved": False,
        "features": [
            "loan_amount",
            "term",
            "interest_rate",
            "employment_years",
            "income",
            "credit_rating",
            "num_credit_cards",
            "total_credit_limit",
        ],
        "profile": {
            "loan_amount": 11000,
            "term": 36,
            "interest_rate": 16.5,
            "employment_years": 6,
            "income": 28000,
            "credit_rating": 5,
            "num_credit_cards": 2,
            "total_credit_limit": 6000,
        },
        "weights": {"num_credit_cards": -1.0, "total_credit_limit": -0.002},
        "bias": 7.5,
        "grid": {"features": ["num_credit_cards", "total_credit_limit"], "steps": {"total_credit_limit": 1000}},
        "actions": [
            {
                "name": "make additional monthly payments towards the credit card with the $4000 limit, pay it off and close it",
                "class_tag": "reduce both the number of credit cards you own and your total spending limit",
                "cost": 4,
                "outcomes": [{"prob": 1.0, "effects": {"num_credit_cards": -1, "total_credit_limit": -4000}}],
            }
        ],
        "global": "Hello Martin. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on the number of credit cards you own and the total spending limit of those credit cards.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to own fewer credit cards with a lower spending limit.",
                "filler": "If you had only one credit card and this credit card had a limit of not more than $3000, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, you need to have only one credit card and the limit on this credit card cannot be more than $3000.",
                "action": "You could {action}.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you can have only one credit card and the limit on this credit card cannot be more than $3000.",
                "action": "You need to {class}.",
            },
        },
    },
    {
        "id": 3,
        "customer": "Evan",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "employment_years", "income"],
        "profile": {
            "loan_amount": 12500,
            "term": 60,
            "interest_rate": 17.5,
            "credit_rating": 5,
            "employment_years": 5,
            "income": 30000,
        },
        # Crossing at income 42000.5: $42000 still denies, $43000 approves.
        "weights": {"income": 0.001},
        "bias": -42.0005,
        "grid": {"features": ["income"], "steps": {"income": 1000}},
        "actions": [
            {
                "name": "getting a promotion, a secondary job, or finding a new job",
                "class_tag": "find approaches to increase your income",
                "cost": 5,
                "outcomes": [{"prob": 1.0, "effects": {"income": 13000}}],
            },
            {
                "name": "complete a professional certification",
                "class_tag": "find approaches to increase your income",
                "cost": 2,
                "outcomes": [
                    {"prob": 0.7, "effects": {"income": 6000}},
                    {"prob": 0.3, "effects": {}},
                ],
            },
        ],
        "metadata": {"demo": "lending-demo"},
        "global": "Hello Evan. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on your income.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, your income needs to be higher than $42000.",
                "filler": "If your income had been above $42000, we could have given you a loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, your income needs to be higher than $42000.",
                "action": "You could increase your income by {action}.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, your income needs to be higher than $42000.",
                "action": "You should {class}.",
            },
        },
    },
    {
        "id": 4,
        "customer": "Kajol",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "employment_years", "income", "num_inquiries"],
        "profile": {
            "loan_amount": 6000,
            "term": 60,
            "interest_rate": 12,
            "employment_years": 8,
            "income": 30000,
            "num_inquiries": 16,
        },
        "weights": {"num_inquiries": -1.0},
        "bias": 4.5,
        "grid": {"features": ["num_inquiries"], "steps": {}},
        "actions": [
            {
                "name": "do not apply for a new loan for the next six months",
                "class_tag": "avoid any activity for the next six months that requires a credit inquiry for your credit report",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"num_inquiries": -12}}],
            }
        ],
        "global": "Hello Kajol. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on the number of credit report inquiries stated in your credit report.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to have fewer credit enquiries for your credit report.",
                "filler": "You have more than fifteen inquiries for your credit report in the past six months. If you had fewer than five inquiries, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, you need to have fewer than five inquiries for your credit report rather than fifteen.",
                "action": "If you {action}, you could reduce the number of inquiries.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you need to have fewer than five inquiries for your credit report rather than fifteen.",
                "action": "To reduce the number of inquiries, please {class}.",
            },
        },
    },
    {
        "id": 5,
        "customer": "Loren",
        "approved": False,
        "features": [
            "loan_amount",
            "term",
            "interest_rate",
            "credit_rating",
            "employment_years",
            "income",
            "total_credit_limit",
        ],
        "profile": {
            "loan_amount": 20000,
            "term": 36,
            "interest_rate": 10,
            "credit_rating": 3,
            "employment_years": 10,
            "income": 80000,
            "total_credit_limit": 25000,
        },
        "weights": {"total_credit_limit": -0.001},
        "bias": 9.9995,
        "grid": {"features": ["total_credit_limit"], "steps": {"total_credit_limit": 1000}},
        "actions": [
            {
                "name": "consolidate some of your credit cards into a new loan and close them to get to the spending limit of $10000",
                "class_tag": "explore approaches to reduce the total spending limit on your credit cards",
                "cost": 3,
                "outcomes": [{"prob": 1.0, "effects": {"total_credit_limit": -16000}}],
            }
        ],
        "global": "Hello Loren. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on the total spending limit of your credit cards.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to have a lower spending limit.",
                "filler": "If the total spending limit of your credit cards had been less than $10000, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, the total spending limit of your credit cards has to be less than $10000.",
                "action": "You could {action}.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, the total spending limit of your credit cards has to be less than $10000.",
                "action": "You need to {class}.",
            },
        },
    },
    {
        "id": 6,
        "customer": "Paul",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "employment_years", "income", "credit_rating"],
        "profile": {
            "loan_amount": 20000,
            "term": 60,
            "interest_rate": 13.5,
            "employment_years": 10,
            "income": 35000,
            "credit_rating": 3,
        },
        # logit = 0.12 - 0.002*(amount-8000) - (term-36); approval needs both cuts.
        "weights": {"loan_amount": -0.002, "term": -1.0},
        "bias": 52.12,
        "grid": {"features": ["loan_amount", "term"], "steps": {"loan_amount": 100}},
        "actions": [
            {
                "name": "re-apply for a loan of $8000 on a 36-month term",
                "class_tag": "reduce both the loan amount and the loan term",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"loan_amount": -12000, "term": -24}}],
            }
        ],
        "global": "Hello Paul. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on the loan amount and the loan term.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to have a lower loan amount and term.",
                "filler": "If your application were for an $8000 loan on a 36-month term, we would have given you a loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, the loan amount needs to be $8000 or less on a 36-month term.",
                "action": "You could {action} to get a loan.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, the loan amount needs to be $8000 or less on a 36-month term.",
                "action": "You could {class} to get a loan.",
            },
        },
    },
    {
        "id": 7,
        "customer": "Amir",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "income", "credit_rating", "credit_limit"],
        "profile": {
            "loan_amount": 8000,
            "term": 36,
            "interest_rate": 10.5,
            "income": 75000,
            "credit_rating": 2,
            "credit_limit": 4000,
        },
        "weights": {"credit_limit": -0.001},
        "bias": 5.0005,
        "grid": {"features": ["credit_limit"], "steps": {"credit_limit": 1000}},
        "actions": [
            {
                "name": "increase the spending limit on your credit card",
                "class_tag": "either increase your limit or get a new card to go above the $5000 limit",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"credit_limit": 2000}}],
            }
        ],
        "global": "Hello Amir. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on the spending limit of your credit card.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if you had a higher spending limit on your credit card.",
                "filler": "If your spending limit were more than $5000, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if you had a higher spending limit of more than $5000 on your credit card.",
                "action": "You could {action} to get this amount.",
            },
            "directive-generic": {
                "counterfactual": "We would have denied you the loan if you had a higher spending limit of more than $5000 on your credit card.",
                "action": "You could {class}.",
            },
        },
    },
    {
        "id": 8,
        "customer": "Ashley",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "income"],
        "profile": {"loan_amount": 1000, "term": 36, "interest_rate": 16.29, "credit_rating": 3, "income": 28000},
        "weights": {"credit_rating": -2.0},
        "bias": 7.0,
        "grid": {"features": ["credit_rating"], "steps": {}},
        "actions": [
            {
                "name": "missed your monthly credit card payments for six months",
                "class_tag": "any of your activities negatively impacted your payment history",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"credit_rating": 1}}],
            }
        ],
        "global": "Hello Ashley. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on your credit rating of C.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if your credit rating was worse than your current credit rating.",
                "filler": "If your credit rating score had been between D and F, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if your credit rating score was between D and F.",
                "action": "If you {action}, your credit rating will be D or worse.",
            },
            "directive-generic": {
                "counterfactual": "We would have denied you the loan if your credit rating score was between D and F.",
                "action": "Your credit rating will be D or worse if {class}.",
            },
        },
    },
    {
        "id": 9,
        "customer": "Rachell",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "income", "num_inquiries"],
        "profile": {
            "loan_amount": 4600,
            "term": 36,
            "interest_rate": 6.5,
            "credit_rating": 1,
            "income": 33000,
            "num_inquiries": 2,
        },
        "weights": {"num_inquiries": -1.0},
        "bias": 6.5,
        "grid": {"features": ["num_inquiries"], "steps": {}},
        "actions": [
            {
                "name": "applied for new loans in the past six months",
                "class_tag": "engaged in activities requiring a credit inquiry",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"num_inquiries": 5}}],
            }
        ],
        "global": "Hello Rachell. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on the number of credit report inquiries stated in your credit report.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if you had many credit enquiries for your credit report.",
                "filler": "You have two inquiries in the past six months. If you had more than six inquiries, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if you had more than six credit enquiries for your credit report in the past six months.",
                "action": "If you had {action}, you could have increased the number of inquiries.",
            },
            "directive-generic": {
                "counterfactual": "We would have denied you the loan if you had more than six credit enquiries for your credit report in the past six months.",
                "action": "If you {class}, you could have increased the number of inquiries.",
            },
        },
    },
    {
        "id": 10,
        "customer": "Kevin",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "credit_utilisation", "income"],
        "profile": {
            "loan_amount": 3000,
            "term": 36,
            "interest_rate": 15.6,
            "credit_rating": 4,
            "credit_utilisation": 29,
            "income": 30000,
        },
        "weights": {"credit_utilisation": -1.0},
        "bias": 30.5,
        "grid": {"features": ["credit_utilisation"], "steps": {"credit_utilisation": 1}},
        "actions": [
            {
                "name": "kept on using your credit card without paying them off",
                "class_tag": "kept on increasing your total debt",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"credit_utilisation": 3}}],
            }
        ],
        "global": "Hello Kevin. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on your credit utilisation rate of 29%.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if your credit utilisation rate was worse than your current utilisation rate.",
                "filler": "If your credit utilisation rate had been higher than 30%, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if your credit utilisation rate was higher than 30%.",
                "action": "If you {action}, you could increase your credit utilisation rate to 30%.",
            },
            "directive-generic": {
                "counterfactual": "We would have denied you the loan if your credit utilisation rate was higher than 30%.",
                "action": "If you {class}, your credit utilisation rate could increase to 30%.",
            },
        },
    },
    {
        "id": 11,
        "customer": "Julie",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "income", "credit_rating", "debt_to_income"],
        "profile": {
            "loan_amount": 18000,
            "term": 60,
            "interest_rate": 18.5,
            "income": 55000,
            "credit_rating": 5,
            "debt_to_income": 52,
        },
        "weights": {"debt_to_income": -1.0},
        "bias": 33.25,
        "grid": {"features": ["debt_to_income"], "steps": {"debt_to_income": 1}},
        "actions": [
            {
                "name": "pay off your car loan",
                "class_tag": "reduce your total debt",
                "cost": 3,
                "outcomes": [{"prob": 1.0, "effects": {"debt_to_income": -20}}],
                "preconditions": [{"feature": "debt_to_income", "op": ">=", "value": 40}],
            }
        ],
        "global": "Hello Julie. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on your debt to income ratio.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to have a lower debt to income ratio.",
                "filler": "If your debt to income ratio had been lower than 33%, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, you need to have a debt to income ratio of 33%.",
                "action": "If you {action}, your debt to income ratio will be lower than 33%.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you need to have a debt to income ratio of 33%.",
                "action": "If you {class}, your debt to income ratio could get to 33%.",
            },
        },
    },
    {
        "id": 12,
        "customer": "Pedro",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "income", "credit_rating", "debt_to_income"],
        "profile": {
            "loan_amount": 5000,
            "term": 36,
            "interest_rate": 10.5,
            "income": 65000,
            "credit_rating": 3,
            "debt_to_income": 34,
        },
        "weights": {"debt_to_income": -1.0},
        "bias": 42.5,
        "grid": {"features": ["debt_to_income"], "steps": {"debt_to_income": 1}},
        "actions": [
            {
                "name": "apply for a loan of $6000",
                "class_tag": "increased your total debt or decreased your income",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"debt_to_income": 10}}],
            }
        ],
        "global": "Hello Pedro. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on your debt to income ratio of 34%.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if you had a higher debt to income ratio.",
                "filler": "If your debt to income ratio were higher than 42%, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if you had a debt to income ratio of greater than 42%.",
                "action": "If you were to {action}, your debt to income ratio would be higher than 42%.",
            },
            "directive-generic": {
                "counterfactual": "We would have denied you the loan if you had a debt to income ratio of greater than 42%.",
                "action": "If you {class}, your debt to income ratio would be higher than 42%.",
            },
        },
    },
    {
        "id": 13,
        "customer": "Yolanda",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "income", "credit_rating", "num_defaults"],
        "profile": {
            "loan_amount": 1200,
            "term": 36,
            "interest_rate": 18.4,
            "income": 20500,
            "credit_rating": 4,
            "num_defaults": 6,
        },
        "weights": {"num_defaults": -1.0},
        "bias": 0.5,
        "grid": {"features": ["num_defaults"], "steps": {}},
        "actions": [
            {
                "name": "make the minimum monthly payments for all of your loans for the next 24 months",
                "class_tag": "do not default on any of your loans for the next 24 months",
                "cost": 2,
                "outcomes": [{"prob": 1.0, "effects": {"num_defaults": -6}}],
            }
        ],
        "global": "Hello Yolanda. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on the number of loans you have defaulted in the last two years.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you cannot have any defaults in past two years.",
                "filler": "You have more than five. If you had no defaults in the past two years, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, you need to have zero defaults in the past two years.",
                "action": "If you {action}, you will have no defaults on your record for a period of two years.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you need to have zero defaults in the past two years.",
                "action": "If you {class}, you will have no defaults on your record for a period of two years.",
            },
        },
    },
    {
        "id": 14,
        "customer": "Asha",
        "approved": False,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "credit_utilisation", "income"],
        "profile": {
            "loan_amount": 18000,
            "term": 60,
            "interest_rate": 18.5,
            "credit_rating": 3,
            "credit_utilisation": 80,
            "income": 58000,
        },
        "weights": {"credit_utilisation": -1.0},
        "bias": 30.75,
        "grid": {"features": ["credit_utilisation"], "steps": {"credit_utilisation": 1}},
        "actions": [
            {
                "name": "pay your credit card in full in three months",
                "class_tag": "find strategies to decrease your total debt",
                "cost": 2,
                "outcomes": [{"prob": 1.0, "effects": {"credit_utilisation": -50}}],
            }
        ],
        "global": "Hello Asha. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to deny your loan application based on your credit utilisation rate of 80%.",
        "kinds": {
            "non-directive": {
                "counterfactual": "For your loan application to be accepted, you need to have a lower credit utilisation rate.",
                "filler": "If your credit utilisation rate had been lower than 30%, we would have given you the loan.",
            },
            "directive-specific": {
                "counterfactual": "For your loan application to be accepted, you need to have a credit utilisation rate of 30%.",
                "action": "You need to {action} to get your credit utilisation rate down to 30%.",
            },
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you need to have a credit utilisation rate of 30%.",
                "action": "Please {class} to get your credit utilisation rate down to 30%.",
            },
        },
    },
    {
        "id": 15,
        "customer": "Jim",
        "approved": True,
        "features": ["loan_amount", "term", "interest_rate", "credit_rating", "debt_to_income", "income"],
        "profile": {
            "loan_amount": 4000,
            "term": 36,
            "interest_rate": 11,
            "credit_rating": 3,
            "debt_to_income": 38,
            "income": 45000,
        },
        "weights": {"debt_to_income": -1.0},
        "bias": 42.5,
        "grid": {"features": ["debt_to_income"], "steps": {"debt_to_income": 1}},
        "actions": [
            {
                "name": "apply for a loan of $4500",
                "class_tag": "book an appointment with one of our financial advisors to find out strategies that could help you",
                "cost": 1,
                "outcomes": [{"prob": 1.0, "effects": {"debt_to_income": 10}}],
            }
        ],
        "global": "Hello Jim. Your details were supplied to a credit-scoring algorithm",
        "decision": "that decided to approve your loan application based on your debt to income ratio.",
        "kinds": {
            "non-directive": {
                "counterfactual": "We would have denied you the loan if you had a higher debt to income ratio.",
                "filler": "If your debt to income ratio were higher than 42%, we would have denied you the loan.",
            },
            "directive-specific": {
                "counterfactual": "We would have denied you the loan if you had a debt to income ratio of greater than 42%.",
                "action": "If you were to {action}, your debt to income ratio would be higher than 42%.",
            },
            # This scenario's generic wording keeps the acceptance framing
            # even though the loan was approved; preserved verbatim.
            "directive-generic": {
                "counterfactual": "For your loan application to be accepted, you need to have a debt to income ratio of 42%.",
                "action": "You could {class}.",
            },
        },
    },
]


def scenario_ids() -> list[int]:
    return [s["id"] for s in _SCENARIOS]


def scenario_bundle(scenario_id: int) -> ScenarioBundle:
    entry = next((s for s in _SCENARIOS if s["id"] == scenario_id), None)
    if entry is None:
        raise KeyError(f"no scenario {scenario_id}; valid ids are 1..15")
    schema = FeatureSchema(tuple(_FEATURES[name] for name in entry["features"]))
    weights = {name: float(entry["weights"].get(name, 0.0)) for name in schema.names}
    metadata = {
        "name": f"lending-scenario-{entry['id']:02d}",
        "search": entry["grid"],
        **entry.get("metadata", {}),
    }
    model = LinearModel(schema=schema, weights=weights, bias=entry["bias"], metadata=metadata)
    actions = tuple(
        Action(
            name=a["name"],
            cost=float(a["cost"]),
            outcomes=tuple(Outcome(prob=o["prob"], effects=o["effects"]) for o in a["outcomes"]),
            class_tag=a.get("class_tag"),
            preconditions=tuple(
                (p["feature"], p["op"], float(p["value"])) for p in a.get("preconditions", ())
            ),
        )
        for a in entry["actions"]
    )
    templates = {
        "scenario_id": entry["id"],
        "global": entry["global"],
        "decision": entry["decision"],
        "kinds": entry["kinds"],
    }
    return ScenarioBundle(
        scenario_id=entry["id"],
        customer=entry["customer"],
        approved=entry["approved"],
        schema=schema,
        model=model,
        profile=dict(entry["profile"]),
        catalog=ActionCatalog(actions=actions),
        templates=templates,
    )


def lending_demo() -> ScenarioBundle:
    """The scenario-3 bundle: income boundary calibrated just above $42000."""
    return scenario_bundle(3)
