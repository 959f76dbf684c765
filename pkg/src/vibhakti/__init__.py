"""Case-inflected forms of Sanskrit masculine nouns for inflection-aware word search."""
