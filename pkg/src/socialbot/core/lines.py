"""Canned system lines used across the bot.

Kept in one place so the safety filter's training corpus can include every
line the system itself may emit; a filter that blocks its own host's stock
phrases is miscalibrated by construction.
"""

STATEMENT_LINES = (
    "That sounds wonderful to me.",
    "I really enjoy talking about this.",
    "That is a lovely thought.",
    "I see what you mean, and I agree.",
    "That is such an interesting thing to share.",
)

QUESTION_LINES = (
    "What do you enjoy most about it?",
    "How did you first learn about that?",
    "What else can you tell me about it?",
    "Why do you feel that way about it?",
)

ERROR_APOLOGY = "I'm sorry, something went wrong on my side. Could you say that again?"

SAFE_REPLACEMENT = "Let's talk about something nicer. What else is on your mind?"

FINAL_BACKUP_LINE = "I am not sure what to say, but I am happy to keep chatting."

SYSTEM_LINES = STATEMENT_LINES + QUESTION_LINES + (
    ERROR_APOLOGY,
    SAFE_REPLACEMENT,
    FINAL_BACKUP_LINE,
)
