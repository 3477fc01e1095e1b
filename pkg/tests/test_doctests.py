import doctest

from owflab import words


def test_words_doctests():
    failures, attempted = doctest.testmod(words)
    assert attempted > 0
    assert failures == 0
