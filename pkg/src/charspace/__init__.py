"""Character-space construction: guided exploration of design concept phrases.

From a free-text design brief the engine extracts query adjectives, offers
ranked first-word candidates, enumerates scored adjective-adjective phrases,
retrieves antonyms for the contrast axes, and assembles a four-pole quadrant
("character space") with a template explanation.
"""

__version__ = "0.1.0"
