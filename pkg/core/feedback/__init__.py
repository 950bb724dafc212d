from .policy import FeedbackPolicy, adaptive_soliton, apply_feedback, resized_soliton
