"""Golden explanation strings for the fifteen lending scenarios.

Typed independently of the fixture templates; the tests require the rendering
pipeline to reproduce these byte for byte. Order per scenario: non-directive,
directive-specific, directive-generic.
"""

GOLDEN = {
    1: (
        "For your loan application to be accepted, your credit rating needs to be better than your current credit rating of F. If you had a credit rating score of C, we would have given you the loan.",
        "For your loan application to be accepted, your credit rating needs to be C. You could get a credit rating of C in six months if you were to enable automatic deductions from your savings account to make the monthly credit card payments on time.",
        "For your loan application to be accepted, your credit rating needs to be C. To get a credit rating of C you need to find strategies to ensure that you make the monthly credit card payments on time for the next six months.",
    ),
    2: (
        "For your loan application to be accepted, you need to own fewer credit cards with a lower spending limit. If you had only one credit card and this credit card had a limit of not more than $3000, we would have given you the loan.",
        "For your loan application to be accepted, you need to have only one credit card and the limit on this credit card cannot be more than $3000. You could make additional monthly payments towards the credit card with the $4000 limit, pay it off and close it.",
        "For your loan application to be accepted, you can have only one credit card and the limit on this credit card cannot be more than $3000. You need to reduce both the number of credit cards you own and your total spending limit.",
    ),
    3: (
        "For your loan application to be accepted, your income needs to be higher than $42000. If your income had been above $42000, we could have given you a loan.",
        "For your loan application to be accepted, your income needs to be higher than $42000. You could increase your income by getting a promotion, a secondary job, or finding a new job.",
        "For your loan application to be accepted, your income needs to be higher than $42000. You should find approaches to increase your income.",
    ),
    4: (
        "For your loan application to be accepted, you need to have fewer credit enquiries for your credit report. You have more than fifteen inquiries for your credit report in the past six months. If you had fewer than five inquiries, we would have given you the loan.",
        "For your loan application to be accepted, you need to have fewer than five inquiries for your credit report rather than fifteen. If you do not apply for a new loan for the next six months, you could reduce the number of inquiries.",
        "For your loan application to be accepted, you need to have fewer than five inquiries for your credit report rather than fifteen. To reduce the number of inquiries, please avoid any activity for the next six months that requires a credit inquiry for your credit report.",
    ),
    5: (
        "For your loan application to be accepted, you need to have a lower spending limit. If the total spending limit of your credit cards had been less than $10000, we would have given you the loan.",
        "For your loan application to be accepted, the total spending limit of your credit cards has to be less than $10000. You could consolidate some of your credit cards into a new loan and close them to get to the spending limit of $10000.",
        "For your loan application to be accepted, the total spending limit of your credit cards has to be less than $10000. You need to explore approaches to reduce the total spending limit on your credit cards.",
    ),
    6: (
        "For your loan application to be accepted, you need to have a lower loan amount and term. If your application were for an $8000 loan on a 36-month term, we would have given you a loan.",
        "For your loan application to be accepted, the loan amount needs to be $8000 or less on a 36-month term. You could re-apply for a loan of $8000 on a 36-month term to get a loan.",
        "For your loan application to be accepted, the loan amount needs to be $8000 or less on a 36-month term. You could reduce both the loan amount and the loan term to get a loan.",
    ),
    7: (
        "We would have denied you the loan if you had a higher spending limit on your credit card. If your spending limit were more than $5000, we would have denied you the loan.",
        "We would have denied you the loan if you had a higher spending limit of more than $5000 on your credit card. You could increase the spending limit on your credit card to get this amount.",
        "We would have denied you the loan if you had a higher spending limit of more than $5000 on your credit card. You could either increase your limit or get a new card to go above the $5000 limit.",
    ),
    8: (
        "We would have denied you the loan if your credit rating was worse than your current credit rating. If your credit rating score had been between D and F, we would have denied you the loan.",
        "We would have denied you the loan if your credit rating score was between D and F. If you missed your monthly credit card payments for six months, your credit rating will be D or worse.",
        "We would have denied you the loan if your credit rating score was between D and F. Your credit rating will be D or worse if any of your activities negatively impacted your payment history.",
    ),
    9: (
        "We would have denied you the loan if you had many credit enquiries for your credit report. You have two inquiries in the past six months. If you had more than six inquiries, we would have denied you the loan.",
        "We would have denied you the loan if you had more than six credit enquiries for your credit report in the past six months. If you had applied for new loans in the past six months, you could have increased the number of inquiries.",
        "We would have denied you the loan if you had more than six credit enquiries for your credit report in the past six months. If you engaged in activities requiring a credit inquiry, you could have increased the number of inquiries.",
    ),
    10: (
        "We would have denied you the loan if your credit utilisation rate was worse than your current utilisation rate. If your credit utilisation rate had been higher than 30%, we would have denied you the loan.",
        "We would have denied you the loan if your credit utilisation rate was higher than 30%. If you kept on using your credit card without paying them off, you could increase your credit utilisation rate to 30%.",
        "We would have denied you the loan if your credit utilisation rate was higher than 30%. If you kept on increasing your total debt, your credit utilisation rate could increase to 30%.",
    ),
    11: (
        "For your loan application to be accepted, you need to have a lower debt to income ratio. If your debt to income ratio had been lower than 33%, we would have given you the loan.",
        "For your loan application to be accepted, you need to have a debt to income ratio of 33%. If you pay off your car loan, your debt to income ratio will be lower than 33%.",
        "For your loan application to be accepted, you need to have a debt to income ratio of 33%. If you reduce your total debt, your debt to income ratio could get to 33%.",
    ),
    12: (
        "We would have denied you the loan if you had a higher debt to income ratio. If your debt to income ratio were higher than 42%, we would have denied you the loan.",
        "We would have denied you the loan if you had a debt to income ratio of greater than 42%. If you were to apply for a loan of $6000, your debt to income ratio would be higher than 42%.",
        "We would have denied you the loan if you had a debt to income ratio of greater than 42%. If you increased your total debt or decreased your income, your debt to income ratio would be higher than 42%.",
    ),
    13: (
        "For your loan application to be accepted, you cannot have any defaults in past two years. You have more than five. If you had no defaults in the past two years, we would have given you the loan.",
        "For your loan application to be accepted, you need to have zero defaults in the past two years. If you make the minimum monthly payments for all of your loans for the next 24 months, you will have no defaults on your record for a period of two years.",
        "For your loan application to be accepted, you need to have zero defaults in the past two years. If you do not default on any of your loans for the next 24 months, you will have no defaults on your record for a period of two years.",
    ),
    14: (
        "For your loan application to be accepted, you need to have a lower credit utilisation rate. If your credit utilisation rate had been lower than 30%, we would have given you the loan.",
        "For your loan application to be accepted, you need to have a credit utilisation rate of 30%. You need to pay your credit card in full in three months to get your credit utilisation rate down to 30%.",
        "For your loan application to be accepted, you need to have a credit utilisation rate of 30%. Please find strategies to decrease your total debt to get your credit utilisation rate down to 30%.",
    ),
    15: (
        "We would have denied you the loan if you had a higher debt to income ratio. If your debt to income ratio were higher than 42%, we would have denied you the loan.",
        "We would have denied you the loan if you had a debt to income ratio of greater than 42%. If you were to apply for a loan of $4500, your debt to income ratio would be higher than 42%.",
        "For your loan application to be accepted, you need to have a debt to income ratio of 42%. You could book an appointment with one of our financial advisors to find out strategies that could help you.",
    ),
}
