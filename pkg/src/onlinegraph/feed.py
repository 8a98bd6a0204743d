#!/usr/bin/env python
# Copyright (c) 2026 onlinegraph contributors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Request feeds drive a run one request at a time.  A :class:`RequestFeed`
replays a fixed sequence; an :class:`AdaptiveFeed` asks a callback for the
next request after observing the current solution, which is how the
lower-bound adversaries play against an algorithm.
"""


class RequestFeed(object):
    """
    Replays a fixed request sequence.

    :param requests: Iterable of :class:`~onlinegraph.demand.Request`.
    """
    def __init__(self, requests=()):
        self._pending = list(requests)
        self._served = []

    @property
    def served(self):
        """
        Requests handed out so far, in order.
        """
        return list(self._served)

    def next_request(self, view):
        """
        :param view: The running algorithm's state (ignored by static feeds).
        :returns: The next request, or ``None`` when the feed is exhausted.
        """
        if len(self._served) >= len(self._pending):
            return None
        request = self._pending[len(self._served)]
        self._served.append(request)
        return request

    def __iter__(self):
        while True:
            request = self.next_request(None)
            if request is None:
                return
            yield request


class AdaptiveFeed(RequestFeed):
    """
    Produces requests from a callback ``chooser(view, step)`` that sees the
    algorithm's state before each request.  The feed ends after ``length``
    requests or when the chooser returns ``None``.

    :param callable chooser: Returns the next request.
    :param int length: Maximum number of requests.  ``None`` means unbounded.
    """
    def __init__(self, chooser, length=None):
        super(AdaptiveFeed, self).__init__()
        self._chooser = chooser
        self._length = length
        self._stopped = False

    def stop(self):
        self._stopped = True

    def next_request(self, view):
        if self._stopped or (self._length is not None and
                             len(self._served) >= self._length):
            return None
        request = self._chooser(view, len(self._served))
        if request is None:
            self._stopped = True
            return None
        self._served.append(request)
        return request


def as_feed(requests):
    """
    Wraps a plain request iterable in a :class:`RequestFeed`; feeds pass
    through unchanged.
    """
    if isinstance(requests, RequestFeed):
        return requests
    return RequestFeed(requests)
